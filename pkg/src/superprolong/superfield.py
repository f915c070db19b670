"""Polynomial supervector fields on R^{m|n}: brackets, weak derived flags,
strong-regularity diagnosis and symbol extraction.

Coefficients live in Q[x^1..x^m] (x) Lambda[th^1..th^n] with a cap on the
even polynomial degree.  A superfunction is treated as invertible at the
base point iff its evaluation there after killing nilpotents is nonzero;
the direct-factor property is tested at the base point plus a fixed batch
of pseudo-random rational sample points, and the report says so.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exprparse import parse_terms
from .scalars import FIELD_Q, Scalar, as_scalar
from .superspace import EVEN, ODD, BasisVector, GradedSuperSpace
from .liesuper import LieSuperalgebra, SymbolAlgebra, validate as validate_alg
from .liesuper import check_fundamental_nondegenerate


class Ambient:
    """Coordinate chart of R^{m|n}: ordered even and odd coordinate names."""

    def __init__(self, even_names, odd_names, degree_cap=8):
        self.even = list(even_names)
        self.odd = list(odd_names)
        self.m = len(self.even)
        self.n = len(self.odd)
        self.degree_cap = degree_cap
        if len(set(self.even) | set(self.odd)) != self.m + self.n:
            raise ValueError("coordinate names must be distinct")

    def directions(self):
        return [("x", i) for i in range(self.m)] + [
            ("th", a) for a in range(self.n)
        ]

    def direction_name(self, d):
        return self.even[d[1]] if d[0] == "x" else self.odd[d[1]]

    def direction_parity(self, d):
        return EVEN if d[0] == "x" else ODD


class DegreeCapError(ValueError):
    pass


class SuperPolynomial:
    """Sparse element of Q[x] (x) Lambda[theta].

    terms: {(xexp tuple, theta tuple sorted strictly increasing): Scalar}.
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient, terms=None):
        self.ambient = ambient
        self.terms = {}
        for key, val in (terms or {}).items():
            val = as_scalar(val)
            if val:
                self.terms[key] = val

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(ambient, c):
        c = as_scalar(c)
        key = ((0,) * ambient.m, ())
        return SuperPolynomial(ambient, {key: c} if c else {})

    @staticmethod
    def coordinate(ambient, name):
        if name in ambient.even:
            i = ambient.even.index(name)
            exp = tuple(1 if j == i else 0 for j in range(ambient.m))
            return SuperPolynomial(ambient, {(exp, ()): Scalar(1)})
        if name in ambient.odd:
            a = ambient.odd.index(name)
            return SuperPolynomial(ambient, {((0,) * ambient.m, (a,)): Scalar(1)})
        raise ValueError("unknown coordinate %r" % name)

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """EVEN/ODD when homogeneous, None for 0, raises when mixed."""
        pars = {len(th) % 2 for _, th in self.terms}
        if not pars:
            return None
        if len(pars) > 1:
            raise ValueError("inhomogeneous superfunction")
        return pars.pop()

    def __eq__(self, other):
        return isinstance(other, SuperPolynomial) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, val in other.terms.items():
            s = out.get(key, Scalar(0)) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SuperPolynomial(self.ambient, out)

    def __neg__(self):
        return SuperPolynomial(
            self.ambient, {k: -v for k, v in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return SuperPolynomial(self.ambient)
        return SuperPolynomial(
            self.ambient, {k: v * s for k, v in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        amb = self.ambient
        cap = amb.degree_cap
        out = {}
        for (xa, tha), va in self.terms.items():
            for (xb, thb), vb in other.terms.items():
                sign, th = _merge_theta(tha, thb)
                if sign == 0:
                    continue
                xe = tuple(a + b for a, b in zip(xa, xb))
                if sum(xe) > cap:
                    raise DegreeCapError(
                        "even degree cap %d exceeded in a product" % cap
                    )
                key = (xe, th)
                s = out.get(key, Scalar(0)) + va * vb * Scalar(sign)
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SuperPolynomial(amb, out)

    def diff_x(self, i):
        out = {}
        for (xe, th), v in self.terms.items():
            if xe[i]:
                nxe = list(xe)
                nxe[i] -= 1
                out[(tuple(nxe), th)] = v * Scalar(xe[i])
        return SuperPolynomial(self.ambient, out)

    def diff_theta(self, a):
        """Left derivative with respect to theta_a."""
        out = {}
        for (xe, th), v in self.terms.items():
            if a in th:
                pos = th.index(a)
                nth = th[:pos] + th[pos + 1 :]
                sign = Scalar(-1) if pos % 2 else Scalar(1)
                out[(xe, nth)] = v * sign
        return SuperPolynomial(self.ambient, out)

    def ev(self, point):
        """Evaluation at (x = point, theta = 0)."""
        total = Scalar(0)
        for (xe, th), v in self.terms.items():
            if th:
                continue
            c = v
            for e, p in zip(xe, point):
                if e:
                    pw = as_scalar(p)
                    for _ in range(e):
                        c = c * pw
            total = total + c
        return total

    def body(self):
        """The theta-free part."""
        return SuperPolynomial(
            self.ambient,
            {(xe, th): v for (xe, th), v in self.terms.items() if not th},
        )

    def is_constant(self):
        return all(
            not th and not any(xe) for (xe, th) in self.terms
        )

    def constant_value(self):
        return self.terms.get(((0,) * self.ambient.m, ()), Scalar(0))

    def to_str(self):
        if not self.terms:
            return "0"
        amb = self.ambient
        parts = []
        for (xe, th), v in sorted(self.terms.items()):
            factors = []
            for i, e in enumerate(xe):
                if e == 1:
                    factors.append(amb.even[i])
                elif e > 1:
                    factors.append("%s^%d" % (amb.even[i], e))
            for a in th:
                factors.append(amb.odd[a])
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
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def _merge_theta(a, b):
    """Concatenate-sort two strictly increasing odd index tuples; returns
    (sign, merged) with sign 0 on a repeated index."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return 0, ()
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] moves left past the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class SuperVectorField:
    """Parity-homogeneous derivation of the polynomial superalgebra."""

    __slots__ = ("ambient", "parity", "coeffs", "name")

    def __init__(self, ambient, parity, coeffs, name=None, check=True):
        self.ambient = ambient
        self.parity = parity
        self.coeffs = {}
        for d, poly in coeffs.items():
            if poly:
                self.coeffs[d] = poly
        self.name = name
        if check:
            for d, poly in self.coeffs.items():
                want = (parity + ambient.direction_parity(d)) % 2
                if poly.parity() != want:
                    raise ValueError(
                        "coefficient of %s breaks the declared parity"
                        % ambient.direction_name(d)
                    )

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, d):
        return self.coeffs.get(d, SuperPolynomial(self.ambient))

    def apply(self, f):
        """X(f) for a superfunction f."""
        out = SuperPolynomial(self.ambient)
        for d, c in self.coeffs.items():
            df = f.diff_x(d[1]) if d[0] == "x" else f.diff_theta(d[1])
            if df:
                out = out + c * df
        return out

    def scale_fn(self, f):
        """f * X (left module action); parity of f must be homogeneous."""
        fp = f.parity()
        if fp is None:
            return SuperVectorField(self.ambient, self.parity, {}, check=False)
        return SuperVectorField(
            self.ambient,
            (self.parity + fp) % 2,
            {d: f * c for d, c in self.coeffs.items()},
            check=False,
        )

    def __add__(self, other):
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return SuperVectorField(self.ambient, self.parity, out, check=False)

    def __neg__(self):
        return SuperVectorField(
            self.ambient, self.parity,
            {d: -c for d, c in self.coeffs.items()}, check=False,
        )

    def __sub__(self, other):
        return self + (-other)

    def ev(self, point):
        """Values at (x = point, theta = 0) per direction."""
        return {d: c.ev(point) for d, c in self.coeffs.items()}

    def to_str(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in self.ambient.directions():
            c = self.coeffs.get(d)
            if not c:
                continue
            cs = c.to_str()
            dn = "@" + self.ambient.direction_name(d)
            if cs == "1":
                parts.append(dn)
            elif cs == "-1":
                parts.append("-" + dn)
            elif "+" in cs[1:] or "-" in cs[1:]:
                parts.append("(%s)*%s" % (cs, dn))
            else:
                parts.append("%s*%s" % (cs, dn))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self):
        amb = self.ambient
        coeffs = []
        for d in amb.directions():
            c = self.coeffs.get(d)
            if not c:
                continue
            coeffs.append(
                {
                    "direction": amb.direction_name(d),
                    "monomials": [
                        {
                            "x_exponents": list(xe),
                            "theta_subset": [amb.odd[a] for a in th],
                            "coeff": v.to_str(),
                        }
                        for (xe, th), v in sorted(c.terms.items())
                    ],
                }
            )
        return {
            "parity": "even" if self.parity == EVEN else "odd",
            "coefficients": coeffs,
        }


def bracket_fields(X, Y):
    """[X, Y] = XY - (-1)^{|X||Y|} YX as a derivation."""
    amb = X.ambient
    sgn = Scalar(-1) if (X.parity and Y.parity) else Scalar(1)
    out = {}
    dirs = set(X.coeffs) | set(Y.coeffs)
    for d in dirs:
        a = X.apply(Y.coefficient(d)) if Y.coefficient(d) else SuperPolynomial(amb)
        b = X.coefficient(d)
        bb = Y.apply(b) if b else SuperPolynomial(amb)
        c = a - bb if sgn == 1 else a + bb
        if c:
            out[d] = c
    return SuperVectorField(
        amb, (X.parity + Y.parity) % 2, out,
        name=None, check=False,
    )


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_superfunction(ambient, text):
    out = SuperPolynomial(ambient)
    for sign, factors in parse_terms(text):
        poly = SuperPolynomial.constant(ambient, sign)
        for f in factors:
            if f[0] == "num":
                poly = poly.scale(f[1])
            elif f[0] == "name":
                base = SuperPolynomial.coordinate(ambient, f[1])
                for _ in range(f[2]):
                    poly = poly * base
            else:
                raise ValueError("direction symbol inside a function: %r" % text)
        out = out + poly
    return out


def parse_field(ambient, text, name=None):
    """Parse "@x + p*@u + q^2*@z" style expressions; the direction marker is
    '@name', 'd_name' or a literal unicode del."""
    terms = {}
    for sign, factors in parse_terms(text):
        poly = SuperPolynomial.constant(ambient, sign)
        direction = None
        for f in factors:
            if f[0] == "num":
                poly = poly.scale(f[1])
            elif f[0] == "name":
                base = SuperPolynomial.coordinate(ambient, f[1])
                for _ in range(f[2]):
                    poly = poly * base
            else:
                if direction is not None:
                    raise ValueError("two directions in one term: %r" % text)
                nm = f[1]
                if nm in ambient.even:
                    direction = ("x", ambient.even.index(nm))
                elif nm in ambient.odd:
                    direction = ("th", ambient.odd.index(nm))
                else:
                    raise ValueError("unknown direction %r" % nm)
        if direction is None:
            raise ValueError("term without a direction in %r" % text)
        cur = terms.get(direction)
        terms[direction] = poly if cur is None else cur + poly
    pars = set()
    for d, poly in terms.items():
        if poly:
            pars.add((poly.parity() + ambient.direction_parity(d)) % 2)
    if len(pars) > 1:
        raise ValueError("field %r is not parity-homogeneous" % text)
    parity = pars.pop() if pars else EVEN
    return SuperVectorField(ambient, parity, terms, name=name)


def field_from_json(ambient, data):
    terms = {}
    for entry in data["coefficients"]:
        nm = entry["direction"]
        if nm in ambient.even:
            d = ("x", ambient.even.index(nm))
        elif nm in ambient.odd:
            d = ("th", ambient.odd.index(nm))
        else:
            raise ValueError("unknown direction %r" % nm)
        tm = {}
        for mono in entry["monomials"]:
            xe = tuple(mono.get("x_exponents", [0] * ambient.m))
            th = tuple(
                sorted(ambient.odd.index(t) for t in mono.get("theta_subset", []))
            )
            from .scalars import parse_scalar

            c = mono["coeff"]
            tm[(xe, th)] = parse_scalar(c) if isinstance(c, str) else as_scalar(c)
        terms[d] = SuperPolynomial(ambient, tm)
    parity = data.get("parity")
    if parity is not None:
        from .superspace import parity_from_str

        return SuperVectorField(
            ambient, parity_from_str(parity), terms, name=data.get("name")
        )
    pars = {
        (p.parity() + ambient.direction_parity(d)) % 2
        for d, p in terms.items()
        if p
    }
    if len(pars) != 1:
        raise ValueError("cannot infer a homogeneous parity")
    return SuperVectorField(ambient, pars.pop(), terms, name=data.get("name"))


# ---------------------------------------------------------------------------
# distributions and the weak derived flag
# ---------------------------------------------------------------------------

class DistributionSpec:
    def __init__(self, ambient, generators, basepoint=None):
        self.ambient = ambient
        self.generators = list(generators)
        for g in self.generators:
            if not g:
                raise ValueError("zero generator")
        self.basepoint = [
            Fraction(v) for v in (basepoint or [0] * ambient.m)
        ]
        if len(self.basepoint) != ambient.m:
            raise ValueError("basepoint needs %d even coordinates" % ambient.m)

    def rank(self):
        p = sum(1 for g in self.generators if g.parity == EVEN)
        return (p, len(self.generators) - p)


class FrameField:
    """A frame member: field, flag level, pivot direction and pivot
    coefficient (an even unit at the base point)."""

    def __init__(self, field, level, pivot_dir, pivot_poly, label):
        self.field = field
        self.level = level
        self.pivot_dir = pivot_dir
        self.pivot_poly = pivot_poly
        self.label = label


class DerivedFlag:
    def __init__(self, dist, frames, residuals, depth, levels_rank,
                 bracket_generating, max_depth):
        self.dist = dist
        self.frames = frames          # list of FrameField, frame order
        self.residuals = residuals    # list of (level, field)
        self.depth = depth
        self.levels_rank = levels_rank  # level -> (even, odd) eval rank at x0
        self.bracket_generating = bracket_generating
        self.max_depth = max_depth

    def frame_at_level(self, level):
        return [f for f in self.frames if f.level == level]


def _is_scalar_multiple(F, G):
    """True when F = lambda * G for a scalar lambda (same direction support)."""
    if set(F.coeffs) != set(G.coeffs):
        return False
    lam = None
    for d, cf in F.coeffs.items():
        cg = G.coeffs[d]
        for key, v in cf.terms.items():
            w = cg.terms.get(key)
            if w is None:
                return False
            ratio = v / w
            if lam is None:
                lam = ratio
            elif ratio != lam:
                return False
        if len(cf.terms) != len(cg.terms):
            return False
    return lam is not None


def _find_pivot(field, point):
    """First direction (canonical order) whose coefficient is a unit at the
    base point."""
    for d in field.ambient.directions():
        c = field.coeffs.get(d)
        if c and c.ev(point):
            return d
    return None


def _reduce_field(field, frames, point):
    """Reduce against the frame; constant pivots divide exactly, non-constant
    unit pivots eliminate by cross-multiplication (module-equivalent)."""
    F = field
    for fr in frames:
        c = F.coeffs.get(fr.pivot_dir)
        if not c:
            continue
        p = fr.pivot_poly
        if p.is_constant():
            F = F - fr.field.scale_fn(c.scale(Scalar(1) / p.constant_value()))
        else:
            F = F.scale_fn(p) - fr.field.scale_fn(c)
    return F


def derived_flag(dist, max_depth=None):
    """Weak derived flag D = D^1 in D^2 in ...; per level a reduced
    generating set (frame members with unit pivots plus non-framable
    residual generators)."""
    amb = dist.ambient
    point = dist.basepoint
    if max_depth is None:
        max_depth = amb.m + amb.n + 1
    frames = []
    residuals = []
    counter = [0]

    def try_add(field, level, label):
        R = _reduce_field(field, frames, point)
        if not R:
            return False
        piv = _find_pivot(R, point)
        if piv is None:
            for _, old in residuals:
                if _is_scalar_multiple(R, old):
                    return False
            residuals.append((level, R))
            return True
        counter[0] += 1
        frames.append(
            FrameField(R, level, piv, R.coeffs[piv], label)
        )
        return True

    for g in dist.generators:
        try_add(g, 1, g.name or ("gen%d" % (len(frames) + 1)))
    level = 1
    levels_rank = {1: _eval_rank(frames, residuals, 1, point)}
    while level < max_depth:
        new = False
        current = [(f.field, f.label) for f in frames if f.level == level]
        current += [(r, "res") for lv, r in residuals if lv == level]
        for g in dist.generators:
            for h, hl in current:
                br = bracket_fields(g, h)
                if br:
                    lbl = "[%s,%s]" % (g.name or "?", hl)
                    if try_add(br, level + 1, lbl):
                        new = True
        if not new:
            break
        level += 1
        levels_rank[level] = _eval_rank(frames, residuals, level, point)
    total = _eval_rank(frames, residuals, level, point)
    bracket_generating = total == (amb.m, amb.n)
    return DerivedFlag(
        dist, frames, residuals, level, levels_rank, bracket_generating,
        max_depth,
    )


def _eval_rank(frames, residuals, level, point):
    """Evaluation rank at the base point of the level-<=level generators,
    split by parity."""
    from .linalg import rank_rows

    ev_rows = {EVEN: [], ODD: []}
    fields = [f.field for f in frames if f.level <= level]
    fields += [r for lv, r in residuals if lv <= level]
    dims = 0
    for f in fields:
        dims = f.ambient.m + f.ambient.n
        vals = f.ev(point)
        row = {}
        for k, d in enumerate(f.ambient.directions()):
            v = vals.get(d)
            if v:
                row[k] = v
        ev_rows[f.parity].append(row)
    return (
        rank_rows(ev_rows[EVEN], dims),
        rank_rows(ev_rows[ODD], dims),
    )


# ---------------------------------------------------------------------------
# strong regularity and the symbol
# ---------------------------------------------------------------------------

def sample_points(ambient, count=5, seed=0, base=None):
    """The base point plus a fixed pseudo-random batch of rational points."""
    rng = random.Random(seed)
    pts = [list(base or [Fraction(0)] * ambient.m)]
    for _ in range(count):
        pts.append(
            [
                Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                for _ in range(ambient.m)
            ]
        )
    return pts


def _expand_in_frame(field, frames):
    """Unique frame expansion over the local ring: returns (coeffs, remainder,
    denominator) with field = (sum_k coeffs[k] * frame[k] + remainder)/den."""
    R = field
    den = SuperPolynomial.constant(field.ambient, 1)
    coeffs = [SuperPolynomial(field.ambient) for _ in frames]
    for k, fr in enumerate(frames):
        c = R.coeffs.get(fr.pivot_dir)
        if not c:
            continue
        p = fr.pivot_poly
        if p.is_constant():
            lam = c.scale(Scalar(1) / p.constant_value())
            coeffs[k] = coeffs[k] + lam * den
            R = R - fr.field.scale_fn(lam)
        else:
            for j in range(len(coeffs)):
                coeffs[j] = p * coeffs[j]
            coeffs[k] = coeffs[k] + c
            den = den * p
            R = R.scale_fn(p) - fr.field.scale_fn(c)
    return coeffs, R, den


def check_strong_regularity(flag, points=None, seed=0):
    """PASS iff the adapted frame exists (no residuals), stays independent at
    every sample point, and the graded bracket coefficients are constants.

    Returns {"ok", "witnesses", "constants"}; constants maps
    (level_i_index, level_j_index) -> {frame_index: Scalar} on PASS.
    """
    amb = flag.dist.ambient
    if points is None:
        points = sample_points(amb, seed=seed, base=flag.dist.basepoint)
    report = {"ok": True, "witnesses": [], "constants": {}, "sampling": len(points)}
    if flag.residuals:
        report["ok"] = False
        for lv, r in flag.residuals:
            report["witnesses"].append(
                "level %d generator with no invertible coefficient: %s"
                % (lv, r.to_str())
            )
        return report
    # (a) independence of frame evaluations at every sample point
    from .linalg import rank_rows

    for pt in points:
        rows = {EVEN: [], ODD: []}
        for fr in flag.frames:
            vals = fr.field.ev(pt)
            rows[fr.field.parity].append(
                {
                    k: v
                    for k, (v) in (
                        (k, vals.get(d)) for k, d in enumerate(amb.directions())
                    )
                    if v
                }
            )
        for par in (EVEN, ODD):
            want = len(rows[par])
            if rank_rows(rows[par], amb.m + amb.n) != want:
                report["ok"] = False
                report["witnesses"].append(
                    "frame evaluations dependent at x = (%s)"
                    % ", ".join(str(c) for c in pt)
                )
                return report
    # (b) graded bracket coefficients are constants
    for a, fa in enumerate(flag.frames):
        for b, fb in enumerate(flag.frames):
            if b < a:
                continue
            lv = fa.level + fb.level
            br = bracket_fields(fa.field, fb.field)
            if not br and lv > flag.depth:
                continue
            coeffs, R, den = _expand_in_frame(br, flag.frames)
            if R:
                report["ok"] = False
                report["witnesses"].append(
                    "bracket [%s,%s] leaves the frame span: %s"
                    % (fa.label, fb.label, R.to_str())
                )
                continue
            for k, fr in enumerate(flag.frames):
                c = coeffs[k]
                if fr.level < lv or not c:
                    continue
                if fr.level > lv:
                    report["ok"] = False
                    report["witnesses"].append(
                        "bracket [%s,%s] escapes level %d (hits %s)"
                        % (fa.label, fb.label, lv, fr.label)
                    )
                    continue
                # c/den must be a constant scalar
                lam = _constant_ratio(c, den)
                if lam is None:
                    report["ok"] = False
                    report["witnesses"].append(
                        "non-constant graded coefficient of %s in [%s,%s]: (%s)/(%s)"
                        % (fr.label, fa.label, fb.label, c.to_str(), den.to_str())
                    )
                else:
                    report["constants"].setdefault((a, b), {})[k] = lam
    return report


def _constant_ratio(c, den):
    """lambda with c == lambda * den, or None."""
    lam = None
    dv = den.constant_value()
    cv = c.constant_value()
    if dv:
        lam = cv / dv
    else:
        return None
    if c - den.scale(lam):
        return None
    return lam


def extract_symbol(flag, regularity=None, seed=0):
    """SymbolAlgebra of a strongly regular flag; structure constants are the
    constant graded bracket coefficients in the adapted frame."""
    if regularity is None:
        regularity = check_strong_regularity(flag, seed=seed)
    if not regularity["ok"]:
        raise ValueError(
            "distribution is not strongly regular: %s"
            % "; ".join(regularity["witnesses"][:3])
        )
    frames = flag.frames
    basis = []
    names = set()
    for k, fr in enumerate(frames):
        nm = fr.label
        while nm in names:
            nm += "'"
        names.add(nm)
        basis.append(BasisVector(nm, -fr.level, fr.field.parity))
    space = GradedSuperSpace(basis)
    brackets = {}
    for (a, b), coeffs in regularity["constants"].items():
        vec = {k: lam for k, lam in coeffs.items() if lam}
        if vec:
            brackets[(a, b)] = vec
    alg = LieSuperalgebra(space, brackets, field=FIELD_Q)
    bad = validate_alg(alg)
    if bad:
        raise ValueError("extracted symbol fails validation: %r" % bad[:3])
    sym = SymbolAlgebra(alg)
    return sym


# ---------------------------------------------------------------------------
# left-invariant model of a nilpotent symbol
# ---------------------------------------------------------------------------

def _bernoulli_plus(k):
    """Bernoulli numbers with B_1 = +1/2 (series x/(1 - e^{-x}))."""
    B = [Fraction(0)] * (k + 1)
    B[0] = Fraction(1)
    from math import comb

    for m in range(1, k + 1):
        s = Fraction(0)
        for j in range(m):
            s += comb(m + 1, j) * B[j]
        B[m] = -s / (m + 1)
    if k >= 1:
        B[1] = Fraction(1, 2)
    return B


def left_invariant_fields(m):
    """Left-invariant vector fields on exp(m) in exponential coordinates of
    the first kind: X_y = sum_k B+_k/k! (ad_a)^k y with a the tautological
    m-valued coordinate function.  Returns (ambient, fields_by_basis_index).
    """
    if isinstance(m, LieSuperalgebra):
        m = SymbolAlgebra(m)
    space = m.space
    even_names = [b.name for b in space if b.parity == EVEN]
    odd_names = [b.name for b in space if b.parity == ODD]
    amb = Ambient(even_names, odd_names, degree_cap=max(8, m.mu + 2))
    coord_poly = {}
    direction_of = {}
    for i, b in enumerate(space):
        coord_poly[i] = SuperPolynomial.coordinate(amb, b.name)
        if b.parity == EVEN:
            direction_of[i] = ("x", even_names.index(b.name))
        else:
            direction_of[i] = ("th", odd_names.index(b.name))
    Bp = _bernoulli_plus(m.mu)
    from math import factorial

    fields = []
    for y in range(len(space)):
        # v_k = (ad_a)^k y as {basis_index: SuperPolynomial}
        vec = {y: SuperPolynomial.constant(amb, 1)}
        total = {y: SuperPolynomial.constant(amb, Bp[0])}
        for k in range(1, m.mu):
            nxt = {}
            for c, poly in vec.items():
                for i, b in enumerate(space):
                    res = m.bracket_indices(i, c)
                    if not res:
                        continue
                    # [coord_i (x) e_i, poly (x) e_c] =
                    #   (-1)^{|e_i| |poly|} coord_i * poly (x) [e_i, e_c]
                    pp = poly.parity()
                    sgn = -1 if (space[i].parity and pp) else 1
                    contrib = coord_poly[i] * poly
                    if sgn < 0:
                        contrib = contrib.scale(-1)
                    for tgt, s in res.items():
                        cur = nxt.get(tgt)
                        add = contrib.scale(s)
                        nxt[tgt] = add if cur is None else cur + add
            vec = {cidx: p for cidx, p in nxt.items() if p}
            if not vec:
                break
            coeff = Scalar(Fraction(Bp[k], factorial(k)))
            for cidx, p in vec.items():
                cur = total.get(cidx)
                add = p.scale(coeff)
                total[cidx] = add if cur is None else cur + add
        coeffs = {}
        for cidx, poly in total.items():
            if poly:
                coeffs[direction_of[cidx]] = poly
        fields.append(
            SuperVectorField(
                amb, space[y].parity, coeffs, name=space[y].name
            )
        )
    return amb, fields


def left_invariant_distribution(m):
    """DistributionSpec generated by the left-invariant fields of g_{-1}."""
    if isinstance(m, LieSuperalgebra):
        m = SymbolAlgebra(m)
    amb, fields = left_invariant_fields(m)
    gens = [
        fields[i]
        for i in range(len(m.space))
        if m.space[i].degree == -1
    ]
    return DistributionSpec(amb, gens)


def symbols_isomorphic_on_the_nose(s1, s2):
    """Positional comparison: same per-(degree,parity) dimensions and
    identical structure constants under the order-preserving basis match
    within each degree."""
    a1, a2 = s1.alg, s2.alg
    if len(a1.space) != len(a2.space):
        return False
    perm = {}
    used = set()
    for i, b in enumerate(a1.space):
        found = None
        for j, c in enumerate(a2.space):
            if j in used:
                continue
            if c.degree == b.degree and c.parity == b.parity:
                found = j
                break
        if found is None:
            return False
        perm[i] = found
        used.add(found)
    for x in range(len(a1.space)):
        for y in range(len(a1.space)):
            v1 = a1.bracket_indices(x, y)
            v2 = a2.bracket_indices(perm[x], perm[y])
            if {perm[c]: s for c, s in v1.items()} != v2:
                return False
    return True
