"""Builders for the named Lie superalgebras used throughout the package.

Matrix families (gl, sl, osp, spo, the periplectic zoo) are produced from a
single generic routine that solves the invariance equation of a bilinear
form; their defining representation is attached to the result.  Nilpotent
symbols (Heisenberg contact, SHC, odd-ODE) are entered by explicit structure
constants.  The supertranslation builder works over Q(i) with the Pauli
realization of the three-dimensional Clifford module.

Basis naming follows the sources these algebras come from: E11, E12, ... for
matrix units; X, th1, th2, ... for odd-ODE symbols; e1, e2, th1p, th1pp,
th2p, th2pp, h, rho1, rho2, f1, f2 for the SHC symbol; v1..v3, s{copy}_{1,2}
for supertranslations.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import ExactMatrix, SpanSolver, kernel_basis_rows
from .scalars import FIELD_Q, FIELD_QI, Scalar, as_scalar
from .superspace import EVEN, ODD, BasisVector, GradedSuperSpace
from .liesuper import LieSuperalgebra, SymbolAlgebra


# ---------------------------------------------------------------------------
# generic matrix-family machinery
# ---------------------------------------------------------------------------

def _entry_parity(p, i):
    return EVEN if i < p else ODD


def supertranspose(M, p):
    """Supertranspose convention under which X^st P + (-1)^{|X|} P X = 0
    cuts out the periplectic algebras in their block form:
    (A B; C D)^st = (A^t -C^t; B^t D^t)."""
    n = M.rows
    out = [[Scalar(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = M[(i, j)]
            if not s:
                continue
            sign = -1 if (_entry_parity(p, i) == ODD and _entry_parity(p, j) == EVEN) else 1
            out[j][i] = s * Scalar(sign)
    return ExactMatrix(out, M.field)


def _matrix_family(p, q, members, names, field=FIELD_Q, weights=None):
    """LieSuperalgebra from a list of (parity, matrix) pairs closed under the
    supercommutator; structure constants are solved exactly in the span."""
    n = p + q
    dim = n * n

    def flatten(M):
        return {
            i * n + j: M[(i, j)]
            for i in range(n)
            for j in range(n)
            if M[(i, j)]
        }

    flats = [flatten(M) for _, M in members]
    solver = SpanSolver(flats)
    basis = []
    for k, (par, M) in enumerate(members):
        deg = 0
        if weights is not None:
            degs = {
                weights[i] - weights[j]
                for i in range(n)
                for j in range(n)
                if M[(i, j)]
            }
            if len(degs) > 1:
                raise ValueError("member %d not weight-homogeneous" % k)
            deg = degs.pop() if degs else 0
        basis.append(BasisVector(name=names[k], degree=deg, parity=par))
    space = GradedSuperSpace(basis)
    brackets = {}
    for a in range(len(members)):
        pa, Ma = members[a]
        for b in range(a, len(members)):
            pb, Mb = members[b]
            sign = Scalar(1) if (pa == ODD and pb == ODD) else Scalar(-1)
            C = Ma * Mb + (Mb * Ma) * sign
            vec = flatten(C)
            if not vec:
                continue
            coeffs = solver.solve(vec)
            if coeffs is None:
                raise ValueError("matrix family not closed under bracket")
            res = {c: s for c, s in enumerate(coeffs) if s}
            if res:
                brackets[(a, b)] = res
    rep = {k: M for k, (_, M) in enumerate(members)}
    return LieSuperalgebra(space, brackets, field=field, rep=rep, rep_shape=(p, q))


def _unit_names(p, q):
    n = p + q
    if n <= 9:
        return {(i, j): "E%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)}
    return {(i, j): "E%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)}


def _matrix_unit(n, i, j, field=FIELD_Q):
    M = [[Scalar(0)] * n for _ in range(n)]
    M[i][j] = Scalar(1)
    return ExactMatrix(M, field)


def gl(p, q, field=FIELD_Q, weights=None):
    """gl(p|q): all matrix units E_ij."""
    n = p + q
    names = _unit_names(p, q)
    members, labels = [], []
    for i in range(n):
        for j in range(n):
            members.append(
                ((_entry_parity(p, i) + _entry_parity(p, j)) % 2, _matrix_unit(n, i, j, field))
            )
            labels.append(names[(i, j)])
    return _matrix_family(p, q, members, labels, field=field, weights=weights)


def sl(p, q, field=FIELD_Q, weights=None):
    """sl(p|q): supertrace-zero matrices."""
    n = p + q
    names = _unit_names(p, q)
    members, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                members.append(
                    ((_entry_parity(p, i) + _entry_parity(p, j)) % 2,
                     _matrix_unit(n, i, j, field))
                )
                labels.append(names[(i, j)])
    # supertrace-zero diagonal combinations
    str_signs = [1 if i < p else -1 for i in range(n)]
    diag = kernel_basis_rows([[Scalar(s) for s in str_signs]], n)
    for k, v in enumerate(diag):
        M = [[Scalar(0)] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = v[i]
        members.append((EVEN, ExactMatrix(M, field)))
        labels.append("H%d" % (k + 1))
    return _matrix_family(p, q, members, labels, field=field, weights=weights)


def form_preserving(p, q, P, field=FIELD_Q, extra_supertrace_zero=False,
                    extend_center=False, prefix="M"):
    """Subalgebra of gl(p|q) preserving the bilinear form with matrix P:
    P(Xu, v) + (-1)^{|X||u|} P(u, Xv) = 0 for all basis u, v."""
    n = p + q
    members, labels = [], []
    for parity in (EVEN, ODD):
        slots = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if (_entry_parity(p, i) + _entry_parity(p, j)) % 2 == parity
        ]
        pos = {s: k for k, s in enumerate(slots)}
        rows = []
        for j in range(n):
            pj = _entry_parity(p, j)
            sgn = Scalar(-1) if (parity == ODD and pj == ODD) else Scalar(1)
            for k in range(n):
                row = [Scalar(0)] * len(slots)
                hit = False
                for i in range(n):
                    if (i, j) in pos and P[(i, k)]:
                        row[pos[(i, j)]] = row[pos[(i, j)]] + P[(i, k)]
                        hit = True
                    if (i, k) in pos and P[(j, i)]:
                        row[pos[(i, k)]] = row[pos[(i, k)]] + sgn * P[(j, i)]
                        hit = True
                if hit:
                    rows.append(row)
        if extra_supertrace_zero and parity == EVEN:
            row = [Scalar(0)] * len(slots)
            for i in range(n):
                if (i, i) in pos:
                    row[pos[(i, i)]] = Scalar(1 if i < p else -1)
            rows.append(row)
        for v in kernel_basis_rows(rows, len(slots)):
            M = [[Scalar(0)] * n for _ in range(n)]
            for k, s in enumerate(v):
                if s:
                    i, j = slots[k]
                    M[i][j] = s
            members.append((parity, ExactMatrix(M, field)))
            labels.append("%s%d" % (prefix, len(labels) + 1))
    if extend_center:
        members.append((EVEN, ExactMatrix.identity(n, field)))
        labels.append("Z")
    return _matrix_family(p, q, members, labels, field=field)


def _osp_form(m, two_n):
    if two_n % 2:
        raise ValueError("osp needs an even symplectic rank")
    n = m + two_n
    h = two_n // 2
    P = [[Scalar(0)] * n for _ in range(n)]
    for i in range(m):
        P[i][i] = Scalar(1)
    for i in range(h):
        P[m + i][m + h + i] = Scalar(1)
        P[m + h + i][m + i] = Scalar(-1)
    return ExactMatrix(P)


def osp(m, two_n, field=FIELD_Q):
    """osp(m|2n): even supersymmetric form (symmetric | symplectic)."""
    return form_preserving(m, two_n, _osp_form(m, two_n), field=field, prefix="S")


def _spo_form(m, n):
    if m % 2:
        raise ValueError("spo needs an even symplectic rank on the even part")
    tot = m + n
    h = m // 2
    P = [[Scalar(0)] * tot for _ in range(tot)]
    for i in range(h):
        P[i][h + i] = Scalar(1)
        P[h + i][i] = Scalar(-1)
    for i in range(n):
        P[m + i][m + i] = Scalar(1)
    return ExactMatrix(P)


def spo(m, n, field=FIELD_Q):
    """spo(m|n): even super-skewsymmetric form (symplectic | symmetric)."""
    return form_preserving(m, n, _spo_form(m, n), field=field, prefix="S")


def _periplectic_form(n, skew):
    P = [[Scalar(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        P[i][n + i] = Scalar(1)
        P[n + i][i] = Scalar(-1 if skew else 1)
    return ExactMatrix(P)


def pe(n, skew=False, field=FIELD_Q):
    """pe(n), or the skew-periplectic pe^sk(n) when skew=True."""
    return form_preserving(n, n, _periplectic_form(n, skew), field=field, prefix="P")


def spe(n, skew=False, field=FIELD_Q):
    return form_preserving(
        n, n, _periplectic_form(n, skew), field=field,
        extra_supertrace_zero=True, prefix="P",
    )


def cpe(n, skew=False, field=FIELD_Q):
    return form_preserving(
        n, n, _periplectic_form(n, skew), field=field, extend_center=True, prefix="P",
    )


def cspe(n, skew=False, field=FIELD_Q):
    return form_preserving(
        n, n, _periplectic_form(n, skew), field=field,
        extra_supertrace_zero=True, extend_center=True, prefix="P",
    )


def spe_ab(n, a, b, skew=False, field=FIELD_Q):
    """spe_{a,b}(n) = <a*tau + b*z> x| spe(n); depends only on [a:b]."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 and b == 0:
        return spe(n, skew=skew, field=field)
    if a != 0:
        b = b / a
        a = Fraction(1)
    else:
        b = Fraction(1)
    base = spe(n, skew=skew, field=field)
    members = [
        (base.space[k].parity, base.rep[k]) for k in range(len(base.space))
    ]
    labels = [base.space[k].name for k in range(len(base.space))]
    M = [[Scalar(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        M[i][i] = Scalar(a) + Scalar(b)
        M[n + i][n + i] = Scalar(b) - Scalar(a)
    members.append((EVEN, ExactMatrix(M, field)))
    labels.append("T")
    return _matrix_family(n, n, members, labels, field=field)


# ---------------------------------------------------------------------------
# nilpotent symbols
# ---------------------------------------------------------------------------

def abelian(p, q, degree=-1, field=FIELD_Q):
    basis = [BasisVector("x%d" % (i + 1), degree, EVEN) for i in range(p)]
    basis += [BasisVector("th%d" % (i + 1), degree, ODD) for i in range(q)]
    return LieSuperalgebra(GradedSuperSpace(basis), {}, field=field)


def heisenberg_contact(p, q, form=None, field=FIELD_Q):
    """Contact symbol: g_{-1} = R^{p|q} with an even super-skew form w,
    g_{-2} = <Z>, [u, v] = w(u, v) Z."""
    if form is None:
        form = _spo_form(p, q)
    basis = [BasisVector("x%d" % (i + 1), -1, EVEN) for i in range(p)]
    basis += [BasisVector("th%d" % (i + 1), -1, ODD) for i in range(q)]
    basis.append(BasisVector("Z", -2, EVEN))
    z = p + q
    brackets = {}
    for a in range(p + q):
        for b in range(a, p + q):
            w = form[(a, b)]
            if w:
                brackets[(a, b)] = {z: w}
    return LieSuperalgebra(GradedSuperSpace(basis), brackets, field=field)


def shc_symbol(field=FIELD_Q):
    """Symbol of super Hilbert-Cartan type: growth vector (2|4, 1|2, 2|0)."""
    basis = [
        BasisVector("e1", -1, EVEN),
        BasisVector("e2", -1, EVEN),
        BasisVector("th1p", -1, ODD),
        BasisVector("th1pp", -1, ODD),
        BasisVector("th2p", -1, ODD),
        BasisVector("th2pp", -1, ODD),
        BasisVector("h", -2, EVEN),
        BasisVector("rho1", -2, ODD),
        BasisVector("rho2", -2, ODD),
        BasisVector("f1", -3, EVEN),
        BasisVector("f2", -3, EVEN),
    ]
    space = GradedSuperSpace(basis)
    ix = space.index
    one = Scalar(1)
    brackets = {
        (ix("e1"), ix("e2")): {ix("h"): one},
        (ix("e1"), ix("h")): {ix("f1"): one},
        (ix("e2"), ix("h")): {ix("f2"): one},
        (ix("th1p"), ix("th2p")): {ix("h"): one},
        (ix("th1pp"), ix("th2pp")): {ix("h"): one},
        (ix("e1"), ix("th2p")): {ix("rho1"): one},
        (ix("e2"), ix("th1pp")): {ix("rho1"): one},
        (ix("e1"), ix("th2pp")): {ix("rho2"): one},
        (ix("e2"), ix("th1p")): {ix("rho2"): -one},
        (ix("th1p"), ix("rho1")): {ix("f1"): one},
        (ix("th1pp"), ix("rho2")): {ix("f1"): one},
        (ix("th2pp"), ix("rho1")): {ix("f2"): one},
        (ix("th2p"), ix("rho2")): {ix("f2"): -one},
    }
    return LieSuperalgebra(space, brackets, field=field)


def odd_ode_symbol(order, field=FIELD_Q):
    """Contact symbol of an order-n odd ODE: <X|th1> + <th2> + ... + <thn>,
    [X, th_i] = th_{i+1}."""
    if order < 2:
        raise ValueError("order must be >= 2")
    basis = [BasisVector("X", -1, EVEN), BasisVector("th1", -1, ODD)]
    for i in range(2, order + 1):
        basis.append(BasisVector("th%d" % i, -i, ODD))
    space = GradedSuperSpace(basis)
    brackets = {}
    for i in range(1, order):
        brackets[(0, space.index("th%d" % i))] = {
            space.index("th%d" % (i + 1)): Scalar(1)
        }
    return LieSuperalgebra(space, brackets, field=field)


def odd_ode_scalings(order):
    """The two scaling derivations of odd_ode_symbol(order) fixing the two
    distinguished lines: diag(1,0,1,2,...,n-1) and diag(0,1,1,...,1) in the
    basis (X, th1, ..., thn).  Returned as (parity, action) pairs."""
    t1 = {0: {0: Scalar(1)}}
    t2 = {1: {1: Scalar(1)}}
    for i in range(2, order + 1):
        t1[i] = {i: Scalar(i - 1)}
        t2[i] = {i: Scalar(1)}
    return [(EVEN, t1), (EVEN, t2)]


# ---------------------------------------------------------------------------
# supertranslation algebras (d = 3, Pauli realization, over Q(i))
# ---------------------------------------------------------------------------

PAULI = (
    ((Scalar(0), Scalar(1)), (Scalar(1), Scalar(0))),
    ((Scalar(0), Scalar(0, -1)), (Scalar(0, 1), Scalar(0))),
    ((Scalar(1), Scalar(0)), (Scalar(0), Scalar(-1))),
)


def default_admissible_form(N):
    """eps (x) Id_N on (C^2)^N, eps = ((0,1),(-1,0))."""
    size = 2 * N
    B = [[Scalar(0)] * size for _ in range(size)]
    for a in range(N):
        B[2 * a][2 * a + 1] = Scalar(1)
        B[2 * a + 1][2 * a] = Scalar(-1)
    return ExactMatrix(B, FIELD_QI)


def supertranslation(N, form=None):
    """Supertranslation algebra m = V + S^{+N} for dim V = 3 over Q(i).

    V = m_{-2} is even with orthonormal form; S = C^2 carries the Pauli
    Clifford action; the bracket on m_{-1} is (Gamma(s,t), v) = B(v.s, t)
    for the admissible form B (default eps (x) Id_N)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if form is None:
        form = default_admissible_form(N)
    if form.rows != 2 * N or form.cols != 2 * N:
        raise ValueError("admissible form must be %dx%d" % (2 * N, 2 * N))
    basis = [BasisVector("v%d" % (i + 1), -2, EVEN) for i in range(3)]
    for a in range(N):
        basis.append(BasisVector("s%d_1" % (a + 1), -1, ODD))
        basis.append(BasisVector("s%d_2" % (a + 1), -1, ODD))
    space = GradedSuperSpace(basis)

    def clifford(i, spinor_idx):
        # sigma_i applied to basis spinor e_{spinor_idx}: column of PAULI[i]
        return (PAULI[i][0][spinor_idx], PAULI[i][1][spinor_idx])

    def B(x, y):
        # x, y are dicts spinor-slot -> Scalar over the 2N-dim odd space
        tot = Scalar(0)
        for r, xr in x.items():
            for c, yc in y.items():
                f = form[(r, c)]
                if f:
                    tot = tot + xr * f * yc
        return tot

    brackets = {}
    for a in range(N):
        for alpha in range(2):
            ia = 3 + 2 * a + alpha
            for b in range(N):
                for beta in range(2):
                    ib = 3 + 2 * b + beta
                    if ib < ia:
                        continue
                    vec = {}
                    for i in range(3):
                        col = clifford(i, alpha)
                        x = {2 * a: col[0], 2 * a + 1: col[1]}
                        x = {k: v for k, v in x.items() if v}
                        y = {2 * b + beta: Scalar(1)}
                        coeff = B(x, y)
                        if coeff:
                            vec[i] = coeff
                    sym = {}
                    for i in range(3):
                        col = clifford(i, beta)
                        x = {2 * b: col[0], 2 * b + 1: col[1]}
                        x = {k: v for k, v in x.items() if v}
                        y = {2 * a + alpha: Scalar(1)}
                        c2 = B(x, y)
                        if c2:
                            sym[i] = c2
                    if vec != sym:
                        raise ValueError(
                            "form is not admissible: Gamma is not supersymmetric"
                        )
                    if vec:
                        brackets[(ia, ib)] = vec
    return LieSuperalgebra(space, brackets, field=FIELD_QI)


# ---------------------------------------------------------------------------
# named dispatch
# ---------------------------------------------------------------------------

_ALIASES = {
    "skew_pe": "pe_sk",
    "skew_spe": "spe_sk",
    "skew_cpe": "cpe_sk",
    "skew_cspe": "cspe_sk",
}


def _parse_pq(arg):
    if "|" not in arg:
        raise ValueError("expected p|q, got %r" % arg)
    p, q = arg.split("|")
    return int(p), int(q)


def build_named(spec):
    """Build a catalog algebra from a spec string like "pe:2", "osp:2|2",
    "spe_ab:2:1:2", "odd_ode_symbol:3", "supertranslation:1", "shc_symbol",
    "sl_graded:2|1", "abelian:2|2", "heisenberg_contact:2|0"."""
    parts = spec.replace("(", ":").replace(")", "").split(":")
    name = parts[0].strip()
    args = [a for a in parts[1:] if a != ""]
    name = _ALIASES.get(name, name)
    if name == "gl":
        return gl(*_parse_pq(args[0]))
    if name == "sl":
        return sl(*_parse_pq(args[0]))
    if name == "sl_graded":
        p, q = _parse_pq(args[0])
        weights = [-(i + 1) for i in range(p + q)]
        return sl(p, q, weights=weights)
    if name == "osp":
        return osp(*_parse_pq(args[0]))
    if name == "spo":
        return spo(*_parse_pq(args[0]))
    if name == "pe":
        return pe(int(args[0]))
    if name == "spe":
        return spe(int(args[0]))
    if name == "cpe":
        return cpe(int(args[0]))
    if name == "cspe":
        return cspe(int(args[0]))
    if name == "pe_sk":
        return pe(int(args[0]), skew=True)
    if name == "spe_sk":
        return spe(int(args[0]), skew=True)
    if name == "cpe_sk":
        return cpe(int(args[0]), skew=True)
    if name == "cspe_sk":
        return cspe(int(args[0]), skew=True)
    if name == "spe_ab":
        return spe_ab(int(args[0]), Fraction(args[1]), Fraction(args[2]))
    if name == "abelian":
        return abelian(*_parse_pq(args[0]))
    if name == "heisenberg_contact":
        return heisenberg_contact(*_parse_pq(args[0]))
    if name == "shc_symbol":
        return shc_symbol()
    if name == "odd_ode_symbol":
        return odd_ode_symbol(int(args[0]))
    if name == "supertranslation":
        return supertranslation(int(args[0]))
    raise ValueError("unknown catalog name %r" % name)


def as_symbol(alg):
    """Wrap a catalog algebra concentrated in negative degrees."""
    if isinstance(alg, SymbolAlgebra):
        return alg
    return SymbolAlgebra(alg)
