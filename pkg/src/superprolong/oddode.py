"""Jets of maps R^{p|0} -> R^{0|1}, contact vector fields with generating
superfunctions, the Lagrange bracket, prolongation, and the contact-symmetry
solver for odd ODEs xi^{(n)} = F(x, xi, ..., xi^{(n-1)}).

Jet coordinates: even x^1..x^p and odd xi_I for multi-indices I with
|I| <= r (xi itself is I = ()).  Function coefficients are spanned by
x^k e^{lambda x} with rational lambda (exponentials for p = 1 only).

The contact field of a generating superfunction f = f(x, xi, xi_i):

    S_f = (-1)^{|f|} (d_{xi_i} f) D^(1)_{x_i} + f d_xi + (D^(1)_{x_i} f) d_{xi_i},

its parity is |f|+1, and prolongation coefficients are iterated total
derivatives D_{x^{j_1}}...D_{x^{j_k}} f truncated to jet order k.  The
bracket of generating superfunctions is

    [f,g] = f d_xi(g) + (-1)^{|f|} d_xi(f) g
          + (D^(1)_j f)(d_{xi_j} g) + (-1)^{|f|} (d_{xi_j} f)(D^(1)_j g),

with [S_f, S_g] = S_{[f,g]}.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exprparse import parse_terms
from .scalars import FIELD_Q, Scalar, as_scalar
from .superspace import EVEN, ODD
from .liesuper import LieSuperalgebra, SymbolAlgebra, validate as validate_alg
from .superspace import BasisVector, GradedSuperSpace
from .linalg import kernel_basis_rows, solve_rows


class JetContext:
    """p independent even variables, one odd dependent variable."""

    def __init__(self, p=1):
        self.p = p

    def odd_coords(self, order):
        """All multi-indices (sorted tuples over 1..p) with |I| <= order."""
        out = [()]
        cur = [()]
        for _ in range(order):
            nxt = []
            for I in cur:
                lo = I[-1] if I else 1
                for i in range(lo, self.p + 1):
                    nxt.append(I + (i,))
            out.extend(nxt)
            cur = nxt
        return out

    def coord_name(self, I):
        if not I:
            return "xi"
        if self.p == 1:
            return "xi%d" % len(I)
        return "xi_" + "".join(str(i) for i in I)


class JetFunction:
    """Element of the jet function ring.

    terms: {(xexp tuple, lam Fraction, odd tuple of multi-indices): Scalar};
    odd tuples are strictly increasing in (length, lex) order.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {}
        for key, val in (terms or {}).items():
            val = as_scalar(val)
            if val:
                self.terms[key] = val

    @staticmethod
    def constant(ctx, c):
        c = as_scalar(c)
        key = ((0,) * ctx.p, Fraction(0), ())
        return JetFunction(ctx, {key: c} if c else {})

    @staticmethod
    def x_power(ctx, k, i=0, lam=Fraction(0)):
        exp = tuple(k if j == i else 0 for j in range(ctx.p))
        if lam and ctx.p != 1:
            raise ValueError("exponentials only for p = 1")
        return JetFunction(ctx, {(exp, Fraction(lam), ()): Scalar(1)})

    @staticmethod
    def odd_coord(ctx, I):
        return JetFunction(ctx, {((0,) * ctx.p, Fraction(0), (tuple(I),)): Scalar(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, JetFunction) and self.terms == other.terms

    def parity(self):
        pars = {len(odd) % 2 for (_, _, odd) in self.terms}
        if not pars:
            return None
        if len(pars) > 1:
            raise ValueError("inhomogeneous jet superfunction")
        return pars.pop()

    def max_order(self):
        mo = 0
        for (_, _, odd) in self.terms:
            for I in odd:
                mo = max(mo, len(I))
        return mo

    def __add__(self, other):
        out = dict(self.terms)
        for key, val in other.terms.items():
            s = out.get(key, Scalar(0)) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return JetFunction(self.ctx, out)

    def __neg__(self):
        return JetFunction(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return JetFunction(self.ctx)
        return JetFunction(self.ctx, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, JetFunction):
            return self.scale(other)
        out = {}
        for (xa, la, oa), va in self.terms.items():
            for (xb, lb, ob), vb in other.terms.items():
                sign, odd = _merge_odd(oa, ob)
                if sign == 0:
                    continue
                key = (
                    tuple(a + b for a, b in zip(xa, xb)),
                    la + lb,
                    odd,
                )
                s = out.get(key, Scalar(0)) + va * vb * Scalar(sign)
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return JetFunction(self.ctx, out)

    def diff_x(self, i=0):
        """d/dx^i; for p = 1 this also differentiates the exponential part."""
        out = {}

        def add(key, v):
            s = out.get(key, Scalar(0)) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)

        for (xe, lam, odd), v in self.terms.items():
            if xe[i]:
                nxe = list(xe)
                nxe[i] -= 1
                add((tuple(nxe), lam, odd), v * Scalar(xe[i]))
            if lam and i == 0:
                add((xe, lam, odd), v * Scalar(lam))
        return JetFunction(self.ctx, out)

    def diff_odd(self, I):
        """Left derivative with respect to xi_I."""
        I = tuple(I)
        out = {}
        for (xe, lam, odd), v in self.terms.items():
            if I in odd:
                pos = odd.index(I)
                nodd = odd[:pos] + odd[pos + 1 :]
                sign = Scalar(-1) if pos % 2 else Scalar(1)
                out[(xe, lam, nodd)] = v * sign
        return JetFunction(self.ctx, out)

    def total_derivative(self, i=0):
        """Full total derivative D_{x^i} (raises jet order by one)."""
        out = self.diff_x(i)
        seen = set()
        for (_, _, odd) in self.terms:
            for I in odd:
                seen.add(I)
        for I in sorted(seen, key=_odd_key):
            dI = self.diff_odd(I)
            if dI:
                up = tuple(sorted(I + (i + 1,)))
                out = out + JetFunction.odd_coord(self.ctx, up) * dI
        return out

    def truncate(self, order):
        """Drop terms containing a jet coordinate of order > order."""
        return JetFunction(
            self.ctx,
            {
                key: v
                for key, v in self.terms.items()
                if all(len(I) <= order for I in key[2])
            },
        )

    def first_order_total(self, i=0):
        """D^(1)_{x^i} f = d_x f + xi_i d_xi f (for f of order <= 1)."""
        out = self.diff_x(i)
        dxi = self.diff_odd(())
        if dxi:
            out = out + JetFunction.odd_coord(self.ctx, (i + 1,)) * dxi
        return out

    def substitute_odd(self, I, g):
        """Replace the odd coordinate xi_I by the odd function g."""
        I = tuple(I)
        out = JetFunction(self.ctx)
        keep = {}
        for (xe, lam, odd), v in self.terms.items():
            if I not in odd:
                keep[(xe, lam, odd)] = v
                continue
            pos = odd.index(I)
            sign = Scalar(-1) if pos % 2 else Scalar(1)
            rest = odd[:pos] + odd[pos + 1 :]
            base = JetFunction(self.ctx, {(xe, lam, ()): v * sign})
            restf = JetFunction(
                self.ctx, {((0,) * self.ctx.p, Fraction(0), rest): Scalar(1)}
            )
            out = out + base * g * restf
        return out + JetFunction(self.ctx, keep)

    def weighted_grading(self, order):
        """Grading of S_f induced by the symbol filtration: each monomial
        weighs (#x plus sum over xi^{(j)} factors of (order - j)) - order;
        None when monomials disagree or an exponential is present."""
        grades = set()
        for (xe, lam, odd) in self.terms:
            if lam:
                return None
            w = sum(xe)
            for I in odd:
                w += order - len(I)
            grades.add(w - order)
        if len(grades) != 1:
            return None
        return grades.pop()

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for (xe, lam, odd), v in sorted(
            self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0], _odds_key(kv[0][2]))
        ):
            factors = []
            for i, e in enumerate(xe):
                nm = "x" if self.ctx.p == 1 else "x%d" % (i + 1)
                if e == 1:
                    factors.append(nm)
                elif e > 1:
                    factors.append("%s^%d" % (nm, e))
            if lam:
                factors.append(
                    "exp(x)" if lam == 1 else "exp(%s*x)" % lam
                )
            for I in odd:
                factors.append(self.ctx.coord_name(I))
            mono = "*".join(factors)
            c = v.pretty()
            if mono:
                if c == "1":
                    parts.append(mono)
                elif c == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append("%s*%s" % (c, mono))
            else:
                parts.append(c)
        out = parts[0]
        for pc in parts[1:]:
            out += pc if pc.startswith("-") else "+" + pc
        return out


def _odd_key(I):
    return (len(I), I)


def _odds_key(odd):
    return tuple(_odd_key(I) for I in odd)


def _merge_odd(a, b):
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return 0, ()
    merged = []
    sign = 1
    i = j = 0
    ka = [_odd_key(I) for I in a]
    kb = [_odd_key(I) for I in b]
    while i < len(a) and j < len(b):
        if ka[i] < kb[j]:
            merged.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


# ---------------------------------------------------------------------------
# contact fields
# ---------------------------------------------------------------------------

class ContactField:
    """Vector field on J^r: coefficients per d_{x^i}, d_{xi_I}."""

    def __init__(self, ctx, order, parity, coeffs):
        self.ctx = ctx
        self.order = order
        self.parity = parity
        self.coeffs = {d: f for d, f in coeffs.items() if f}

    def coefficient(self, d):
        return self.coeffs.get(d, JetFunction(self.ctx))

    def apply(self, g):
        out = JetFunction(self.ctx)
        for d, c in self.coeffs.items():
            if d[0] == "x":
                dg = g.diff_x(d[1])
            else:
                dg = g.diff_odd(d[1])
            if dg:
                out = out + c * dg
        return out

    def bracket(self, other):
        sgn = -1 if (self.parity and other.parity) else 1
        dirs = set(self.coeffs) | set(other.coeffs)
        out = {}
        for d in dirs:
            a = self.apply(other.coefficient(d))
            b = other.apply(self.coefficient(d))
            c = a - b if sgn == 1 else a + b
            if c:
                out[d] = c
        return ContactField(
            self.ctx, max(self.order, other.order),
            (self.parity + other.parity) % 2, out,
        )

    def restrict(self, order):
        return ContactField(
            self.ctx, order, self.parity,
            {
                d: f.truncate(order)
                for d, f in self.coeffs.items()
                if d[0] == "x" or len(d[1]) <= order
            },
        )

    def __sub__(self, other):
        out = dict(self.coeffs)
        for d, f in other.coeffs.items():
            s = out.get(d)
            s = -f if s is None else s - f
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return ContactField(self.ctx, max(self.order, other.order), self.parity, out)

    def is_zero(self):
        return not self.coeffs

    def to_str(self):
        if not self.coeffs:
            return "0"
        parts = []
        keys = sorted(
            self.coeffs,
            key=lambda d: (0, d[1], ()) if d[0] == "x" else (1,) + _odd_key(d[1]),
        )
        for d in keys:
            c = self.coeffs[d]
            if d[0] == "x":
                nm = "@x" if self.ctx.p == 1 else "@x%d" % (d[1] + 1)
            else:
                nm = "@" + self.ctx.coord_name(d[1])
            cs = c.to_str()
            if cs == "1":
                parts.append(nm)
            elif cs == "-1":
                parts.append("-" + nm)
            elif "+" in cs[1:] or "-" in cs[1:]:
                parts.append("(%s)*%s" % (cs, nm))
            else:
                parts.append("%s*%s" % (cs, nm))
        out = parts[0]
        for pc in parts[1:]:
            out += pc if pc.startswith("-") else "+" + pc
        return out


class GeneratingFunction:
    """A generating superfunction on J^1 with its parity and (optional)
    grading under the symbol filtration."""

    def __init__(self, fn, order=None):
        self.fn = fn
        self.parity = fn.parity() if fn else EVEN
        self.grading = fn.weighted_grading(order) if order else None

    def to_str(self):
        return self.fn.to_str()


def contact_vf(f, ctx=None):
    """The order-1 contact field S_f of a generating superfunction."""
    if isinstance(f, GeneratingFunction):
        f = f.fn
    ctx = ctx or f.ctx
    if f.max_order() > 1:
        raise ValueError("generating superfunctions live on J^1")
    pf = f.parity()
    if pf is None:
        return ContactField(ctx, 1, ODD, {})
    sgn = Scalar(-1) if pf else Scalar(1)
    coeffs = {}
    xi_coeff = JetFunction(ctx) + f
    for i in range(ctx.p):
        dfi = f.diff_odd((i + 1,))
        if dfi:
            coeffs[("x", i)] = dfi.scale(sgn)
            xi_coeff = xi_coeff + (
                dfi * JetFunction.odd_coord(ctx, (i + 1,))
            ).scale(sgn)
        dtot = f.first_order_total(i)
        if dtot:
            coeffs[("xi", (i + 1,))] = dtot
    if xi_coeff:
        coeffs[("xi", ())] = xi_coeff
    return ContactField(ctx, 1, (pf + 1) % 2, coeffs)


def prolong_field(f, r):
    """Prolongation of S_f to J^r: the d_{xi_I} coefficient for |I| = k is
    D_{x^{j_1}}...D_{x^{j_k}} f truncated to jet order k."""
    if isinstance(f, GeneratingFunction):
        f = f.fn
    ctx = f.ctx
    base = contact_vf(f)
    if r < 1:
        raise ValueError("prolongation order must be >= 1")
    coeffs = dict(base.coeffs)
    level = {(): f}
    for k in range(1, r + 1):
        nxt = {}
        for I, g in level.items():
            lo = I[-1] if I else 1
            for i in range(lo, ctx.p + 1):
                J = I + (i,)
                if J in nxt:
                    continue
                nxt[J] = g.total_derivative(i - 1)
        level = nxt
        if k >= 2:
            for J, g in level.items():
                t = g.truncate(k)
                if t:
                    coeffs[("xi", J)] = t
    return ContactField(ctx, r, base.parity, coeffs)


def lagrange_bracket(f, g):
    """[f, g] with S_{[f,g]} = [S_f, S_g]."""
    if isinstance(f, GeneratingFunction):
        f = f.fn
    if isinstance(g, GeneratingFunction):
        g = g.fn
    ctx = f.ctx
    pf = f.parity()
    if pf is None:
        return JetFunction(ctx)
    sgn = Scalar(-1) if pf else Scalar(1)
    out = f * g.diff_odd(()) + (f.diff_odd(()) * g).scale(sgn)
    for i in range(ctx.p):
        out = out + f.first_order_total(i) * g.diff_odd((i + 1,))
        out = out + (f.diff_odd((i + 1,)) * g.first_order_total(i)).scale(sgn)
    return out


def iota_sigma(S):
    """Contraction of the contact form sigma = d xi - dx^i xi_i with S."""
    ctx = S.ctx
    out = JetFunction(ctx) + S.coefficient(("xi", ()))
    for i in range(ctx.p):
        cx = S.coefficient(("x", i))
        if cx:
            out = out - cx * JetFunction.odd_coord(ctx, (i + 1,))
    return out


def contact_form_preserved(S):
    """sigma([S, V]) = 0 for V in the contact distribution of J^1."""
    ctx = S.ctx
    kernel_fields = []
    for i in range(ctx.p):
        kernel_fields.append(
            ContactField(
                ctx, 1, EVEN,
                {
                    ("x", i): JetFunction.constant(ctx, 1),
                    ("xi", ()): JetFunction.odd_coord(ctx, (i + 1,)),
                },
            )
        )
        kernel_fields.append(
            ContactField(
                ctx, 1, ODD,
                {("xi", (i + 1,)): JetFunction.constant(ctx, 1)},
            )
        )
    for V in kernel_fields:
        if iota_sigma(S.bracket(V)):
            return False
    return True


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_jet(ctx, text):
    """Parse "a(x)*xi + b*xi1*xi2" style jet functions (p = 1 names: x, xi,
    xi1, xi2, ...; p > 1: x1..xp, xi, xi_12...)."""
    out = JetFunction(ctx)
    for sign, factors in parse_terms(text):
        poly = JetFunction.constant(ctx, sign)
        for fct in factors:
            if fct[0] == "num":
                poly = poly.scale(fct[1])
            elif fct[0] == "dir":
                raise ValueError("direction symbol in a jet function: %r" % text)
            else:
                nm, exp = fct[1], fct[2]
                base = _jet_coordinate(ctx, nm)
                for _ in range(exp):
                    poly = poly * base
        out = out + poly
    return out


def _jet_coordinate(ctx, nm):
    if ctx.p == 1 and nm == "x":
        return JetFunction.x_power(ctx, 1)
    if ctx.p > 1 and nm.startswith("x") and nm[1:].isdigit():
        return JetFunction.x_power(ctx, 1, i=int(nm[1:]) - 1)
    if nm == "xi":
        return JetFunction.odd_coord(ctx, ())
    if nm.startswith("xi_"):
        idx = tuple(sorted(int(ch) for ch in nm[3:]))
        return JetFunction.odd_coord(ctx, idx)
    if nm.startswith("xi") and nm[2:].isdigit():
        if ctx.p != 1:
            raise ValueError("xi%s needs p = 1; use xi_... indices" % nm[2:])
        return JetFunction.odd_coord(ctx, (1,) * int(nm[2:]))
    raise ValueError("unknown jet coordinate %r" % nm)


# ---------------------------------------------------------------------------
# odd ODE symmetry solver (p = 1)
# ---------------------------------------------------------------------------

class OdeSpec:
    def __init__(self, order, rhs, poly_degree=4, exponentials=(), ctx=None):
        self.ctx = ctx or JetContext(1)
        if self.ctx.p != 1:
            raise ValueError("the symmetry solver handles p = 1 only")
        if isinstance(rhs, str):
            rhs = parse_jet(self.ctx, rhs)
        self.order = order
        self.rhs = rhs
        if rhs and rhs.parity() != ODD:
            raise ValueError("the right-hand side of an odd ODE must be odd")
        if rhs.max_order() > order - 1:
            raise ValueError("right-hand side order exceeds %d" % (order - 1))
        self.poly_degree = poly_degree
        self.exponentials = [Fraction(l) for l in exponentials]

    @staticmethod
    def from_json(data):
        basis = data.get("basis", {})
        return OdeSpec(
            int(data["order"]),
            data["rhs"],
            poly_degree=int(basis.get("poly_degree", 4)),
            exponentials=[Fraction(l) for l in basis.get("exponentials", [])],
        )


def _linear_constant_coefficients(spec):
    """RHS = sum a_k xi^{(k)} with constant a_k, or None."""
    coeffs = {}
    for (xe, lam, odd), v in spec.rhs.terms.items():
        if any(xe) or lam or len(odd) != 1:
            return None
        coeffs[len(odd[0])] = v
    return coeffs


def _rational_roots(poly):
    """Rational roots with multiplicity of a Fraction-coefficient polynomial
    given low-to-high; returns (roots dict, fully_factored flag)."""
    coeffs = list(poly)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return {}, True
    roots = {}
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots[Fraction(0)] = shift
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]

    def value(lam):
        tot = Fraction(0)
        for k, c in enumerate(coeffs):
            tot += c * lam ** k
        return tot

    changed = True
    while changed and len(coeffs) > 1:
        changed = False
        a0, an = abs(ints[0]), abs(ints[-1])
        cands = set()
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                cands.add(Fraction(pnum, qden))
                cands.add(Fraction(-pnum, qden))
        for lam in sorted(cands):
            if value(lam) == 0:
                roots[lam] = roots.get(lam, 0) + 1
                coeffs = _deflate(coeffs, lam)
                den = 1
                for c in coeffs:
                    den = den * c.denominator // _gcd(den, c.denominator)
                ints = [int(c * den) for c in coeffs]
                changed = True
                break
    return roots, len(coeffs) <= 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _deflate(coeffs, lam):
    """Divide by (t - lam); coeffs low-to-high, exact."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = carry
        carry = coeffs[k] + lam * carry
    assert carry == 0
    return out


def _span_coefficients(generators, f):
    """Coefficients of f over the generating functions, or None."""
    keys = sorted(
        {key for g in generators for key in g.fn.terms} | set(f.terms),
        key=lambda key: (key[0], key[1], _odds_key(key[2])),
    )
    keypos = {key: i for i, key in enumerate(keys)}
    vecs = [
        {keypos[key]: v for key, v in g.fn.terms.items()} for g in generators
    ]
    rows = [
        {c: vecs[c][i] for c in range(len(generators)) if i in vecs[c]}
        for i in range(len(keys))
    ]
    rhs = [f.terms.get(key, Scalar(0)) for key in keys]
    return solve_rows(rows, len(generators), rhs)


class SymmetryResult:
    def __init__(self, spec, generators, algebra, bracket_table, bound,
                 warnings):
        self.spec = spec
        self.generators = generators  # list of GeneratingFunction
        self.algebra = algebra
        self.bracket_table = bracket_table
        self.bound = bound  # total superdim of pr(symbol, scalings)
        self.warnings = warnings

    @property
    def superdim(self):
        p = sum(1 for g in self.generators if g.parity == ODD)
        return (p, len(self.generators) - p)

    @property
    def certified_complete(self):
        return self.bound is not None and self.superdim == self.bound

    def to_json(self):
        return {
            "order": self.spec.order,
            "rhs": self.spec.rhs.to_str(),
            "superdim": {"even": self.superdim[0], "odd": self.superdim[1]},
            "generators": [
                {
                    "f": g.to_str(),
                    "field_parity": "even" if g.parity == ODD else "odd",
                    "grading": g.grading,
                }
                for g in self.generators
            ],
            "bracket_table": self.bracket_table,
            "prolongation_bound": {
                "even": self.bound[0], "odd": self.bound[1],
            },
            "certified_complete": self.certified_complete,
            "warnings": self.warnings,
            "algebra": self.algebra.to_json(),
        }


def determine_symmetries(spec, compute_bound=True):
    """All contact symmetries of xi^(n) = rhs with generating superfunctions
    in the ansatz span c(x) * {1, xi, xi', xi xi'}.

    The solver finds every symmetry whose coefficients lie in the ansatz
    span; it cannot certify there are no others, but when its dimensions
    reach the Tanaka bound pr(symbol, scalings) the result is complete.
    """
    ctx = spec.ctx
    n = spec.order
    warnings = []
    basis_fns = [(k, Fraction(0)) for k in range(spec.poly_degree + 1)]
    lincoeffs = _linear_constant_coefficients(spec)
    if lincoeffs is not None:
        char = [Fraction(0)] * (n + 1)
        char[n] = Fraction(1)
        for k, v in lincoeffs.items():
            if not v.is_rational:
                warnings.append("non-rational coefficient; basis may be incomplete")
                continue
            char[k] -= v.re
        roots, complete = _rational_roots(char)
        if not complete:
            warnings.append(
                "characteristic polynomial has non-rational roots; "
                "basis may be incomplete"
            )
        # generating functions of linear equations involve products of
        # solutions, their duals and e^{-int F_{n-1}}; all of these live on
        # exponents that are {-1,0,1}-combinations of the roots
        wanted = {}
        items = sorted(roots.items())
        if len(items) <= 6:
            combos = [(Fraction(0), 0)]
            for lam, mult in items:
                combos = [
                    (s + eps * lam, m + (mult if eps else 0))
                    for (s, m) in combos
                    for eps in (-1, 0, 1)
                ]
            for s, m in combos:
                wanted[s] = max(wanted.get(s, 0), max(1, m - 1))
        for lam, mult in items:
            wanted[lam] = max(wanted.get(lam, 0), mult)
        for lam, mult in sorted(wanted.items()):
            if lam == 0:
                continue
            for j in range(mult):
                if (j, lam) not in basis_fns:
                    basis_fns.append((j, lam))
    for lam in spec.exponentials:
        if lam and (0, lam) not in basis_fns:
            basis_fns.append((0, lam))
    monomials = {
        EVEN: [(), ((), (1,))],       # 1 and xi*xi'
        ODD: [((),), ((1,),)],         # xi and xi'
    }
    xi_n = JetFunction.odd_coord(ctx, (1,) * n)
    generators = []
    for parity in (EVEN, ODD):
        ansatz = []
        for mono in monomials[parity]:
            for (k, lam) in basis_fns:
                f = JetFunction(
                    ctx,
                    {((k,), lam, tuple(mono)): Scalar(1)},
                )
                ansatz.append(f)
        rows_by_key = {}
        for col, f in enumerate(ansatz):
            S = prolong_field(f, n)
            T = S.coefficient(("xi", (1,) * n)) - S.apply(spec.rhs)
            T = T.substitute_odd((1,) * n, spec.rhs)
            for key, v in T.terms.items():
                rows_by_key.setdefault(key, {})[col] = v
        rows = list(rows_by_key.values())
        for vec in kernel_basis_rows(rows, len(ansatz)):
            f = JetFunction(ctx)
            for col, s in enumerate(vec):
                if s:
                    f = f + ansatz[col].scale(s)
            generators.append(GeneratingFunction(f, order=n))

    def is_symmetry(f):
        S = prolong_field(f, n)
        T = S.coefficient(("xi", (1,) * n)) - S.apply(spec.rhs)
        return not T.substitute_odd((1,) * n, spec.rhs)

    # Lie closure: a bracket of symmetries is a symmetry; adopt any bracket
    # that escapes the current span (possible when the ansatz basis missed a
    # coefficient function).
    guard = 0
    while guard < 32:
        guard += 1
        adopted = None
        for a in range(len(generators)):
            for b in range(a, len(generators)):
                br = lagrange_bracket(generators[a].fn, generators[b].fn)
                if br and _span_coefficients(generators, br) is None:
                    adopted = br
                    break
            if adopted is not None:
                break
        if adopted is None:
            break
        if not is_symmetry(adopted):
            raise AssertionError("a bracket of symmetries failed tangency")
        generators.append(GeneratingFunction(adopted, order=n))
        warnings.append(
            "closure adopted a bracket outside the ansatz span: %s"
            % adopted.to_str()
        )
    # order: even fields (odd f) first to match the (even|odd) convention
    generators.sort(key=lambda g: (0 if g.parity == ODD else 1))
    # abstract symmetry algebra: element parity is the field parity |f|+1
    names = []
    for g in generators:
        nm = g.to_str()
        while nm in names:
            nm += "'"
        names.append(nm)
    basis = [
        BasisVector(nm, g.grading if g.grading is not None else 0,
                    (g.parity + 1) % 2)
        for nm, g in zip(names, generators)
    ]
    use_gradings = all(g.grading is not None for g in generators)
    if not use_gradings:
        basis = [
            BasisVector(nm, 0, (g.parity + 1) % 2)
            for nm, g in zip(names, generators)
        ]
        warnings.append(
            "some generators have ambiguous weights; algebra left ungraded"
        )
    space = GradedSuperSpace(basis)
    brackets = {}
    table = []
    for a in range(len(generators)):
        row = []
        for b in range(len(generators)):
            br = lagrange_bracket(generators[a].fn, generators[b].fn)
            row.append(br.to_str())
            if b < a or not br:
                continue
            coeffs = _span_coefficients(generators, br)
            if coeffs is None:
                raise AssertionError(
                    "bracket [%s, %s] leaves the closed solution span"
                    % (names[a], names[b])
                )
            vec = {c: s for c, s in enumerate(coeffs) if s}
            if vec:
                brackets[(a, b)] = vec
        table.append(row)
    algebra = LieSuperalgebra(space, brackets, field=FIELD_Q)
    bad = validate_alg(algebra)
    if bad:
        raise AssertionError("symmetry algebra fails validation: %r" % bad[:3])
    bound = None
    if compute_bound:
        from .catalog import odd_ode_symbol, odd_ode_scalings
        from .prolong import prolong

        res = prolong(
            SymbolAlgebra(odd_ode_symbol(n)), g0=odd_ode_scalings(n),
            validate_result=False,
        )
        if res.status == "stabilized":
            bound = res.total_superdim
    return SymmetryResult(spec, generators, algebra, table, bound, warnings)
