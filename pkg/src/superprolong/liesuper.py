"""Lie superalgebras by structure constants.

Brackets are stored sparsely for canonical index pairs (a <= b); the other
order is derived from super antisymmetry [x,y] = -(-1)^{|x||y|}[y,x].
``validate`` re-checks everything that can go wrong with a structure-constant
table (grading, parity, antisymmetry of the raw input, super Jacobi) and
reports violations as data rather than raising.
"""

from __future__ import annotations

from .linalg import (
    ExactMatrix,
    kernel_basis_rows,
    in_span,
    span_rank,
    svec_axpy,
    svec_scale,
)
from .scalars import FIELD_Q, FIELD_QI, Scalar, as_scalar, parse_scalar
from .superspace import (
    EVEN,
    ODD,
    BasisVector,
    GradedSuperSpace,
    parity_from_str,
    parity_to_str,
)


class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra with exact structure constants.

    brackets maps basis-index pairs to sparse result vectors
    {target_index: Scalar}.  Any pair order may be supplied; storage is
    canonicalized to a <= b.  A matrix realization (index -> ExactMatrix)
    may be attached for matrix families; structure constants remain the
    source of truth.
    """

    def __init__(self, space, brackets, field=FIELD_Q, rep=None, rep_shape=None):
        self.space = space
        self.field = field
        self.rep = rep
        self.rep_shape = rep_shape  # (p, q) of the defining representation
        self.raw = []
        for (a, b), res in brackets.items():
            vec = {c: as_scalar(s) for c, s in res.items() if as_scalar(s)}
            self.raw.append((a, b, vec))
        self.table = {}
        for a, b, vec in self.raw:
            if a <= b:
                if vec:
                    self.table[(a, b)] = dict(vec)
        for a, b, vec in self.raw:
            if a > b and (b, a) not in self.table:
                sign = Scalar(-1) if not (
                    space[a].parity == ODD and space[b].parity == ODD
                ) else Scalar(1)
                flipped = svec_scale(vec, sign)
                if flipped:
                    self.table[(b, a)] = flipped

    # -- bracket evaluation ------------------------------------------------

    def bracket_indices(self, a, b):
        """[x_a, x_b] as a sparse vector."""
        if a <= b:
            return self.table.get((a, b), {})
        base = self.table.get((b, a))
        if not base:
            return {}
        sign = Scalar(1) if (
            self.space[a].parity == ODD and self.space[b].parity == ODD
        ) else Scalar(-1)
        return svec_scale(base, sign)

    def bracket_vec(self, u, v):
        """Bracket of sparse coordinate vectors (coefficients are scalars)."""
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                res = self.bracket_indices(a, b)
                if res:
                    svec_axpy(out, ca * cb, res)
        return out

    def ad_matrix(self, a):
        """Matrix of ad(x_a) on the whole algebra (columns are images)."""
        n = len(self.space)
        cols = [self.bracket_indices(a, b) for b in range(n)]
        return ExactMatrix(
            [[cols[j].get(i, Scalar(0)) for j in range(n)] for i in range(n)],
            self.field,
        )

    def __len__(self):
        return len(self.space)

    def superdim(self):
        return self.space.superdim()

    # -- serialization -------------------------------------------------------

    def to_json(self):
        basis = [
            {"name": b.name, "degree": b.degree, "parity": parity_to_str(b.parity)}
            for b in self.space
        ]
        brackets = []
        for (a, b) in sorted(self.table):
            res = self.table[(a, b)]
            brackets.append(
                {
                    "left": self.space[a].name,
                    "right": self.space[b].name,
                    "result": [
                        {"basis": self.space[c].name, "coeff": res[c].to_str()}
                        for c in sorted(res)
                    ],
                }
            )
        return {"basis": basis, "brackets": brackets, "field": self.field}

    @staticmethod
    def from_json(data):
        space = GradedSuperSpace(
            [
                BasisVector(
                    name=b["name"],
                    degree=int(b["degree"]),
                    parity=parity_from_str(b["parity"]),
                )
                for b in data["basis"]
            ]
        )
        brackets = {}
        for entry in data.get("brackets", []):
            a = space.index(entry["left"])
            b = space.index(entry["right"])
            vec = {}
            for item in entry["result"]:
                c = space.index(item["basis"])
                coeff = item["coeff"]
                vec[c] = parse_scalar(coeff) if isinstance(coeff, str) else as_scalar(coeff)
            key = (a, b)
            if key in brackets:
                for c, s in vec.items():
                    brackets[key][c] = brackets[key].get(c, Scalar(0)) + s
            else:
                brackets[key] = vec
        return LieSuperalgebra(space, brackets, field=data.get("field", FIELD_Q))


class SymbolAlgebra:
    """A Lie superalgebra concentrated in degrees -mu..-1."""

    def __init__(self, alg):
        degs = alg.space.degrees()
        if not degs or max(degs) > -1:
            raise ValueError("symbol algebra must live in negative degrees")
        self.alg = alg
        self.mu = -min(degs)

    @property
    def space(self):
        return self.alg.space

    @property
    def field(self):
        return self.alg.field

    def bracket_indices(self, a, b):
        return self.alg.bracket_indices(a, b)

    def bracket_vec(self, u, v):
        return self.alg.bracket_vec(u, v)

    def superdim(self):
        return self.alg.superdim()


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(L):
    """All violations of the Lie-superalgebra axioms in L's table.

    Returns a list of dicts {"kind": ..., "where": names, "detail": str};
    empty list iff the structure constants define a graded Lie superalgebra.
    """
    if isinstance(L, SymbolAlgebra):
        L = L.alg
    space = L.space
    out = []

    def name(i):
        return space[i].name

    for a, b, vec in L.raw:
        for c, s in vec.items():
            if not s:
                continue
            if space[c].degree != space[a].degree + space[b].degree:
                out.append(
                    {
                        "kind": "degree",
                        "where": (name(a), name(b), name(c)),
                        "detail": "deg %d != %d + %d"
                        % (space[c].degree, space[a].degree, space[b].degree),
                    }
                )
            if space[c].parity != (space[a].parity + space[b].parity) % 2:
                out.append(
                    {
                        "kind": "parity",
                        "where": (name(a), name(b), name(c)),
                        "detail": "parity mismatch",
                    }
                )

    # antisymmetry on the raw input: both orders present must be consistent,
    # and [x,x] = 0 for even x
    raw_map = {}
    for a, b, vec in L.raw:
        raw_map.setdefault((a, b), []).append(vec)
    for (a, b), vecs in raw_map.items():
        if len(vecs) > 1:
            out.append(
                {
                    "kind": "duplicate",
                    "where": (name(a), name(b)),
                    "detail": "bracket listed more than once",
                }
            )
        if a == b and space[a].parity == EVEN:
            if any(vecs[0].values()):
                out.append(
                    {
                        "kind": "antisymmetry",
                        "where": (name(a), name(a)),
                        "detail": "[x,x] != 0 for even x",
                    }
                )
        if a < b and (b, a) in raw_map:
            other = raw_map[(b, a)][0]
            sign = Scalar(1) if (
                space[a].parity == ODD and space[b].parity == ODD
            ) else Scalar(-1)
            expect = svec_scale(other, sign)
            if expect != vecs[0]:
                out.append(
                    {
                        "kind": "antisymmetry",
                        "where": (name(a), name(b)),
                        "detail": "[x,y] != -(-1)^{|x||y|}[y,x]",
                    }
                )

    # super Jacobi on all ordered basis triples:
    #   [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
    n = len(space)
    for x in range(n):
        px = space[x].parity
        for y in range(n):
            sgn = Scalar(-1) if (px and space[y].parity) else Scalar(1)
            xy = L.bracket_indices(x, y)
            for z in range(n):
                yz = L.bracket_indices(y, z)
                lhs = {}
                for c, s in yz.items():
                    svec_axpy(lhs, s, L.bracket_indices(x, c))
                rhs = {}
                for c, s in xy.items():
                    svec_axpy(rhs, s, L.bracket_indices(c, z))
                xz = L.bracket_indices(x, z)
                for c, s in xz.items():
                    svec_axpy(rhs, sgn * s, L.bracket_indices(y, c))
                defect = dict(lhs)
                svec_axpy(defect, Scalar(-1), rhs)
                if defect:
                    out.append(
                        {
                            "kind": "jacobi",
                            "where": (name(x), name(y), name(z)),
                            "detail": "defect "
                            + ", ".join(
                                "%s: %s" % (name(c), s.pretty())
                                for c, s in sorted(defect.items())
                            ),
                        }
                    )
    return out


def check_fundamental_nondegenerate(m):
    """Fundamentality (generated by g_{-1}) and non-degeneracy of a symbol.

    Returns {"ok": bool, "fundamental": bool, "nondegenerate": bool,
    "witnesses": [...]}; witnesses name offending basis vectors.
    """
    space = m.space
    report = {"ok": True, "fundamental": True, "nondegenerate": True, "witnesses": []}
    deg1 = space.indices_of_degree(-1)
    current = [{i: Scalar(1)} for i in deg1]
    n = len(space)
    for depth in range(2, m.mu + 1):
        nxt = []
        for b in deg1:
            for u in current:
                w = m.bracket_vec({b: Scalar(1)}, u)
                if w:
                    nxt.append(w)
        slice_idx = space.indices_of_degree(-depth)
        want = len(slice_idx)
        got = span_rank(nxt, n)
        if got < want:
            report["ok"] = False
            report["fundamental"] = False
            for i in slice_idx:
                if not in_span(nxt, {i: Scalar(1)}, n):
                    report["witnesses"].append(
                        "not generated from degree -1: %s" % space[i].name
                    )
                    break
        current = nxt
    if m.mu > 1 and deg1:
        rows = []
        for b in range(n):
            targets = {}
            for col, a in enumerate(deg1):
                res = m.bracket_indices(a, b)
                for c, s in res.items():
                    targets.setdefault(c, {})[col] = s
            for c in sorted(targets):
                rows.append(
                    [targets[c].get(col, Scalar(0)) for col in range(len(deg1))]
                )
        central = kernel_basis_rows(rows, len(deg1))
        if central:
            report["ok"] = False
            report["nondegenerate"] = False
            for v in central:
                terms = [
                    space[deg1[k]].name
                    for k, s in enumerate(v)
                    if s
                ]
                report["witnesses"].append(
                    "central element of m inside g_{-1}: " + " + ".join(terms)
                )
    return report


# ---------------------------------------------------------------------------
# graded derivations
# ---------------------------------------------------------------------------

class DerivationSpace:
    """Basis of degree-d superderivations of a symbol algebra, with their
    matrices on m (columns are images of the basis of m)."""

    def __init__(self, m, d, elements):
        self.m = m
        self.d = d
        self.elements = elements  # list of (parity, action dict j -> {i: Scalar})

    @property
    def superdim(self):
        p = sum(1 for par, _ in self.elements if par == EVEN)
        return (p, len(self.elements) - p)

    def matrix(self, k):
        n = len(self.m.space)
        _, action = self.elements[k]
        return ExactMatrix(
            [
                [action.get(j, {}).get(i, Scalar(0)) for j in range(n)]
                for i in range(n)
            ],
            self.m.field,
        )

    def matrices(self):
        return [self.matrix(k) for k in range(len(self.elements))]

    def space(self):
        basis = [
            BasisVector(name="d%d_%d" % (self.d, k), degree=self.d, parity=par)
            for k, (par, _) in enumerate(self.elements)
        ]
        return GradedSuperSpace(basis)


def derivations_gr(m, d=0):
    """All degree-d superderivations D of m: D[x,y] = [Dx,y] + (-1)^{|D||x|}[x,Dy]."""
    if isinstance(m, LieSuperalgebra):
        m = SymbolAlgebra(m)
    space = m.space
    n = len(space)
    elements = []
    for p in (EVEN, ODD):
        # unknowns: entries D[j -> i] with deg_i = deg_j + d, par_i = par_j + p
        unknowns = []
        pos = {}
        for j in range(n):
            for i in range(n):
                if (
                    space[i].degree == space[j].degree + d
                    and space[i].parity == (space[j].parity + p) % 2
                ):
                    pos[(j, i)] = len(unknowns)
                    unknowns.append((j, i))
        if not unknowns:
            continue
        rows = []
        for a in range(n):
            for b in range(a, n):
                ab = m.bracket_indices(a, b)
                sgn = Scalar(-1) if (p and space[a].parity) else Scalar(1)
                coeffs = {}
                for k, s in ab.items():
                    for i in range(n):
                        key = (k, i)
                        if key in pos:
                            coeffs.setdefault(i, {})[pos[key]] = (
                                coeffs.get(i, {}).get(pos[key], Scalar(0)) + s
                            )
                # -[Da, b]
                for i in range(n):
                    if (a, i) in pos:
                        res = m.bracket_indices(i, b)
                        for c, s in res.items():
                            col = pos[(a, i)]
                            coeffs.setdefault(c, {})[col] = (
                                coeffs.get(c, {}).get(col, Scalar(0)) - s
                            )
                # -(-1)^{|D||a|} [a, Db]
                for i in range(n):
                    if (b, i) in pos:
                        res = m.bracket_indices(a, i)
                        for c, s in res.items():
                            col = pos[(b, i)]
                            coeffs.setdefault(c, {})[col] = (
                                coeffs.get(c, {}).get(col, Scalar(0)) - sgn * s
                            )
                for c, row in coeffs.items():
                    if row:
                        rows.append(
                            [row.get(col, Scalar(0)) for col in range(len(unknowns))]
                        )
        for v in kernel_basis_rows(rows, len(unknowns)):
            action = {}
            for col, s in enumerate(v):
                if s:
                    j, i = unknowns[col]
                    action.setdefault(j, {})[i] = s
            elements.append((p, action))
    return DerivationSpace(m, d, elements)
