"""Tanaka-Weisfeiler prolongation of negatively graded Lie superalgebras.

Degree-i elements are represented by their full restriction maps on m: an
element u of g_i assigns to every basis vector b of m (of degree -j) a
vector in the component g_{i-j}, and the defining equations are

    u([v,w]) = [u(v), w] - (-1)^{|v||w|} [u(w), v]     for all v, w in m,

solved degreewise as an exact linear kernel.  Brackets between nonnegative
components are recovered from the operator identity ad_{[u,v]} = [ad_u, ad_v]
and solved back to coordinates; well-definedness relies on transitivity and
is asserted at runtime.

Reductions replace a computed component by a prescribed subspace; codomains
of all later steps are restricted cumulatively (recorded in metadata).
"""

from __future__ import annotations

from .linalg import (
    ExactMatrix,
    SpanSolver,
    kernel_basis_rows,
    solve_in_span,
    span_rank,
    svec_axpy,
    svec_scale,
)
from .scalars import Scalar
from .superspace import EVEN, ODD, BasisVector, GradedSuperSpace
from .liesuper import (
    DerivationSpace,
    LieSuperalgebra,
    SymbolAlgebra,
    derivations_gr,
    validate,
)


class ProlongationError(ValueError):
    pass


def _normalize_g0(m, g0):
    """Accept a DerivationSpace, (parity, action-dict) pairs or
    (parity, ExactMatrix) pairs; return [(parity, action)] with
    action = {src_index: {dst_index: Scalar}}."""
    if g0 is None:
        return derivations_gr(m, 0).elements
    if isinstance(g0, DerivationSpace):
        return list(g0.elements)
    out = []
    n = len(m.space)
    for parity, act in g0:
        if isinstance(act, ExactMatrix):
            action = {}
            for j in range(n):
                col = {i: act[(i, j)] for i in range(n) if act[(i, j)]}
                if col:
                    action[j] = col
            out.append((parity, action))
        else:
            out.append((parity, {j: dict(col) for j, col in act.items() if col}))
    return out


class ProlongationComponent:
    """One computed component g_i (i >= 0).

    elements: list of (parity, action); action maps each m-basis index b to a
    sparse vector over the coordinates of the component of degree
    i + deg(b): global m indices when that degree is negative, element
    indices of the computed component otherwise.
    """

    def __init__(self, degree, elements):
        self.degree = degree
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    @property
    def superdim(self):
        p = sum(1 for par, _ in self.elements if par == EVEN)
        return (p, len(self.elements) - p)


class Prolongation:
    """Incremental prolongation engine; use prolong() for the one-shot API."""

    def __init__(self, m, g0=None):
        if isinstance(m, LieSuperalgebra):
            m = SymbolAlgebra(m)
        self.m = m
        self.space = m.space
        self.n = len(m.space)
        self.mu = m.mu
        elements = _normalize_g0(m, g0)
        self._check_derivations(elements)
        self.comp = {0: ProlongationComponent(0, elements)}
        self.top = 0
        self._brackets = {}  # (k, ek, l, el) -> vec over comp[k+l], k <= l
        self._solvers = {}
        self.reduced_at = []
        if g0 is not None:
            self._check_g0_closed()

    # -- small helpers ---------------------------------------------------

    def _deg(self, b):
        return self.space[b].degree

    def _par(self, b):
        return self.space[b].parity

    def component_parity(self, k, t):
        if k < 0:
            return self._par(t)
        return self.comp[k].elements[t][0]

    def component_coords(self, k, parity=None):
        """Coordinate index list of the degree-k component."""
        if k < 0:
            idxs = self.space.indices_of_degree(k)
        else:
            idxs = list(range(len(self.comp[k].elements)))
        if parity is None:
            return idxs
        return [t for t in idxs if self.component_parity(k, t) == parity]

    def apply_element(self, k, e_idx, target_k, vec):
        """[e, x] for e in comp[k] (k >= 0) and x a vector in the degree
        target_k component; lands in degree k + target_k."""
        par_e, action = self.comp[k].elements[e_idx]
        out = {}
        if target_k < 0:
            for b, c in vec.items():
                img = action.get(b)
                if img:
                    svec_axpy(out, c, img)
            return out
        for t, c in vec.items():
            res = self.bracket_elements(k, e_idx, target_k, t)
            if res:
                svec_axpy(out, c, res)
        return out

    def bracket_elements(self, k, ek, l, el):
        """[e_k, e_l] for computed elements (k, l >= 0) as a vector over
        comp[k+l]; zero when k+l exceeds the stabilized range."""
        if (k, ek, l, el) in self._brackets:
            return self._brackets[(k, ek, l, el)]
        pk = self.comp[k].elements[ek][0]
        pl = self.comp[l].elements[el][0]
        if l < k:
            flip = self.bracket_elements(l, el, k, ek)
            sign = Scalar(1) if (pk == ODD and pl == ODD) else Scalar(-1)
            res = svec_scale(flip, sign)
            self._brackets[(k, ek, l, el)] = res
            return res
        # z(b) = [e_k, [e_l, b]] - (-1)^{pk pl} [e_l, [e_k, b]]
        act_k = self.comp[k].elements[ek][1]
        act_l = self.comp[l].elements[el][1]
        sign = Scalar(1) if (pk == ODD and pl == ODD) else Scalar(-1)
        z_action = {}
        for b in range(self.n):
            degb = self._deg(b)
            term = {}
            v1 = act_l.get(b)
            if v1:
                svec_axpy(term, Scalar(1), self.apply_element(k, ek, l + degb, v1))
            v2 = act_k.get(b)
            if v2:
                svec_axpy(term, sign, self.apply_element(l, el, k + degb, v2))
            if term:
                z_action[b] = term
        degree = k + l
        if degree > self.top or degree not in self.comp:
            if z_action:
                raise ProlongationError(
                    "bracket [g_%d, g_%d] escapes the computed range" % (k, l)
                )
            self._brackets[(k, ek, l, el)] = {}
            return {}
        coeffs = self._solve_in_component(degree, z_action)
        if coeffs is None:
            raise ProlongationError(
                "bracket of g_%d and g_%d does not lie in g_%d "
                "(reduction compatibility violated by elements %d, %d)"
                % (k, l, degree, ek, el)
            )
        res = {t: s for t, s in enumerate(coeffs) if s}
        self._brackets[(k, ek, l, el)] = res
        return res

    def _flatten_action(self, degree, action):
        """Flatten an action of a degree-`degree` element to a single sparse
        vector keyed by (b, target_coord)."""
        flat = {}
        for b, vec in action.items():
            for t, s in vec.items():
                flat[(b, t)] = s
        return flat

    def _solve_in_component(self, degree, action):
        solver = self._solvers.get(degree)
        if solver is None:
            elems = self.comp[degree].elements
            solver = SpanSolver(
                [self._flatten_action(degree, a) for _, a in elems]
            )
            self._solvers[degree] = solver
        return solver.solve(self._flatten_action(degree, action))

    # -- validation of inputs ----------------------------------------------

    def _check_derivations(self, elements):
        m = self.m
        for idx, (p, action) in enumerate(elements):
            for b, col in action.items():
                for i in col:
                    if self._deg(i) != self._deg(b):
                        raise ProlongationError(
                            "g0 element %d is not of degree 0" % idx
                        )
                    if self._par(i) != (self._par(b) + p) % 2:
                        raise ProlongationError(
                            "g0 element %d is not parity-homogeneous" % idx
                        )
        for idx, (p, action) in enumerate(elements):
            for a in range(self.n):
                for b in range(a, self.n):
                    lhs = {}
                    for c, s in m.bracket_indices(a, b).items():
                        img = action.get(c)
                        if img:
                            svec_axpy(lhs, s, img)
                    rhs = {}
                    for i, s in action.get(a, {}).items():
                        svec_axpy(rhs, s, m.bracket_indices(i, b))
                    sgn = Scalar(-1) if (p and self._par(a)) else Scalar(1)
                    for i, s in action.get(b, {}).items():
                        svec_axpy(rhs, sgn * s, m.bracket_indices(a, i))
                    svec_axpy(lhs, Scalar(-1), rhs)
                    if lhs:
                        raise ProlongationError(
                            "g0 element %d is not a derivation of m "
                            "(fails on pair %s, %s)"
                            % (idx, self.space[a].name, self.space[b].name)
                        )

    def _check_g0_closed(self):
        k = len(self.comp[0].elements)
        for i in range(k):
            for j in range(i, k):
                self.bracket_elements(0, i, 0, j)  # raises if not in span

    # -- the prolongation step ----------------------------------------------

    def step(self, i):
        """Solve the degree-i system and return the new component (not yet
        appended); i must be top+1."""
        if i != self.top + 1:
            raise ProlongationError("steps must be computed in order")
        elements = []
        for p in (EVEN, ODD):
            unknowns = []
            pos = {}
            for b in range(self.n):
                k = i + self._deg(b)
                if k < -self.mu:
                    continue
                want = (p + self._par(b)) % 2
                for t in self.component_coords(k, want):
                    pos[(b, t)] = len(unknowns)
                    unknowns.append((b, t))
            if not unknowns:
                continue
            rows = []
            for v in range(self.n):
                for w in range(v, self.n):
                    rows.extend(self._equations(i, p, v, w, pos, len(unknowns)))
            for vec in kernel_basis_rows(rows, len(unknowns)):
                action = {}
                for col, s in enumerate(vec):
                    if s:
                        b, t = unknowns[col]
                        action.setdefault(b, {})[t] = s
                elements.append((p, action))
        comp = ProlongationComponent(i, elements)
        return comp

    def _bracket_with_m(self, k, t, w):
        """[e_t, w] where e_t is a coordinate of the degree-k component and
        w is an m-basis index; lands in degree k + deg(w)."""
        if k < 0:
            return self.m.bracket_indices(t, w)
        return self.comp[k].elements[t][1].get(w, {})

    def _equations(self, i, p, v, w, pos, width):
        """Rows of u([v,w]) - [u(v),w] + (-1)^{|v||w|}[u(w),v] = 0 at (v,w)."""
        space = self.space
        dv, dw = self._deg(v), self._deg(w)
        target_deg = i + dv + dw
        if target_deg < -self.mu:
            return []
        sgn_vw = Scalar(-1) if (self._par(v) and self._par(w)) else Scalar(1)
        coeffs = {}  # target coord -> {unknown col -> Scalar}

        def add(c, col, s):
            if s:
                row = coeffs.setdefault(c, {})
                row[col] = row.get(col, Scalar(0)) + s

        for d, s in self.m.bracket_indices(v, w).items():
            kd = i + self._deg(d)
            for t in self.component_coords(kd) if kd >= -self.mu and (kd in self.comp or kd < 0) else []:
                if (d, t) in pos:
                    add(t, pos[(d, t)], s)
        kv = i + dv
        for t in self.component_coords(kv) if (kv in self.comp or kv < 0) and kv >= -self.mu else []:
            if (v, t) not in pos:
                continue
            for c, s in self._bracket_with_m(kv, t, w).items():
                add(c, pos[(v, t)], -s)
        kw = i + dw
        for t in self.component_coords(kw) if (kw in self.comp or kw < 0) and kw >= -self.mu else []:
            if (w, t) not in pos:
                continue
            for c, s in self._bracket_with_m(kw, t, v).items():
                add(c, pos[(w, t)], sgn_vw * s)
        rows = []
        for c, row in coeffs.items():
            if row:
                rows.append([row.get(col, Scalar(0)) for col in range(width)])
        return rows

    def advance(self, i):
        """Compute, transitivity-check and append component i."""
        comp = self.step(i)
        self.comp[i] = comp
        self.top = i
        self._check_transitivity(i)
        return comp

    def _check_transitivity(self, i):
        comp = self.comp[i]
        if not comp.elements:
            return
        deg1 = self.space.indices_of_degree(-1)
        flats = []
        for _, action in comp.elements:
            flat = {}
            for pos_b, b in enumerate(deg1):
                for t, s in action.get(b, {}).items():
                    flat[(pos_b, t)] = s
            flats.append(flat)
        keys = sorted({k for f in flats for k in f})
        posmap = {k: j for j, k in enumerate(keys)}
        vecs = [{posmap[k]: v for k, v in f.items()} for f in flats]
        if span_rank(vecs, len(keys)) != len(comp.elements):
            raise ProlongationError(
                "transitivity failure at degree %d: ad restricted to g_{-1} "
                "is not injective" % i
            )

    # -- reductions ---------------------------------------------------------

    def reduce_component(self, degree, subspace):
        """Replace g_degree by a subspace.

        subspace: list of (parity, action) in the same action format, or of
        (parity, coeff-list over the computed component).  Compatibility
        [g_j, g_{degree-j}] in g_degree' for 1 <= j <= degree-1 and
        g_0-invariance are enforced.
        """
        if degree not in self.comp or degree > self.top:
            raise ProlongationError("component %d not computed yet" % degree)
        old = self.comp[degree]
        new_elements = []
        for parity, data in subspace:
            if isinstance(data, dict):
                coeffs = self._solve_in_component(degree, data)
                if coeffs is None:
                    raise ProlongationError(
                        "reduction subspace is not inside the computed g_%d"
                        % degree
                    )
                action = {}
                for t, s in enumerate(coeffs):
                    if s:
                        svec_axpy_action(action, s, old.elements[t][1])
                new_elements.append((parity, action))
            else:
                action = {}
                for t, s in zip(range(len(old.elements)), data):
                    s = s if isinstance(s, Scalar) else Scalar(s)
                    if s:
                        svec_axpy_action(action, s, old.elements[t][1])
                new_elements.append((parity, action))
        self.comp[degree] = ProlongationComponent(degree, new_elements)
        # invalidate brackets and solvers touching this component
        self._brackets = {
            key: val
            for key, val in self._brackets.items()
            if key[0] + key[2] < degree and key[0] != degree and key[2] != degree
        }
        self._solvers.pop(degree, None)
        self.reduced_at.append(degree)
        self._check_reduction_compat(degree)

    def _check_reduction_compat(self, degree):
        for j in range(1, degree):
            other = degree - j
            if other not in self.comp:
                continue
            for a in range(len(self.comp[j].elements)):
                for b in range(len(self.comp[other].elements)):
                    self.bracket_elements(j, a, other, b)  # raises if outside
        for a in range(len(self.comp[0].elements)):
            for b in range(len(self.comp[degree].elements)):
                self.bracket_elements(0, a, degree, b)

    # -- assembly -------------------------------------------------------------

    def assemble(self, truncated=False):
        """Extended structure constants of m + g_0 + ... + g_top."""
        names = [b.name for b in self.space]
        basis = list(self.space.basis)
        offsets = {}
        for k in range(0, self.top + 1):
            offsets[k] = len(basis)
            for idx, (par, _) in enumerate(self.comp[k].elements):
                nm = "g%d_%d" % (k, idx + 1)
                while nm in names:
                    nm += "'"
                names.append(nm)
                basis.append(BasisVector(nm, k, par))

        def glob(k, t):
            return t if k < 0 else offsets[k] + t

        brackets = {}
        for (a, b), vec in self.m.alg.table.items():
            brackets[(a, b)] = dict(vec)
        for k in range(0, self.top + 1):
            for idx, (par, action) in enumerate(self.comp[k].elements):
                ga = glob(k, idx)
                for bm, vec in action.items():
                    res = {glob(k + self._deg(bm), t): s for t, s in vec.items()}
                    if res:
                        key = (min(ga, bm), max(ga, bm))
                        if bm <= ga:
                            sign = (
                                Scalar(1)
                                if (par == ODD and self._par(bm) == ODD)
                                else Scalar(-1)
                            )
                            res = svec_scale(res, sign)
                        brackets[key] = res
        for k in range(0, self.top + 1):
            for l in range(k, self.top + 1):
                if k + l > self.top and truncated:
                    continue
                for a in range(len(self.comp[k].elements)):
                    bs = range(a, len(self.comp[l].elements)) if l == k else range(
                        len(self.comp[l].elements)
                    )
                    for b in bs:
                        vec = self.bracket_elements(k, a, l, b)
                        if vec:
                            brackets[(glob(k, a), glob(l, b))] = {
                                glob(k + l, t): s for t, s in vec.items()
                            }
        return LieSuperalgebra(
            GradedSuperSpace(basis), brackets, field=self.m.field
        )


def svec_axpy_action(acc, s, action):
    for b, vec in action.items():
        tgt = acc.setdefault(b, {})
        svec_axpy(tgt, s, vec)
        if not tgt:
            acc.pop(b)
    return acc


# ---------------------------------------------------------------------------
# results and the one-shot driver
# ---------------------------------------------------------------------------

class ProlongationResult:
    def __init__(self, m, engine, status, stabilized_at, max_degree, algebra,
                 metadata):
        self.m = m
        self.engine = engine
        self.status = status  # "stabilized" | "truncated"
        self.stabilized_at = stabilized_at
        self.max_degree = max_degree
        self.algebra = algebra
        self.metadata = metadata

    def component_superdim(self, k):
        if k < 0:
            return self.m.space.superdim(k)
        if k in self.engine.comp:
            return self.engine.comp[k].superdim
        return (0, 0)

    def degrees(self):
        lo = -self.m.mu
        hi = max(self.engine.comp) if self.engine.comp else -1
        return list(range(lo, hi + 1))

    @property
    def total_superdim(self):
        p = q = 0
        for k in self.degrees():
            a, b = self.component_superdim(k)
            p += a
            q += b
        return (p, q)

    def per_degree(self):
        return {k: self.component_superdim(k) for k in self.degrees()}

    def to_json(self, include_algebra=False):
        data = {
            "status": self.status,
            "stabilized_at": self.stabilized_at,
            "max_degree": self.max_degree,
            "per_degree": [
                {"degree": k, "even": d[0], "odd": d[1]}
                for k, d in sorted(self.per_degree().items())
            ],
            "total": {"even": self.total_superdim[0], "odd": self.total_superdim[1]},
            "metadata": self.metadata,
        }
        if include_algebra and self.algebra is not None:
            data["algebra"] = self.algebra.to_json()
        return data


def prolong_step(m, lower, i):
    """One prolongation step from explicitly given lower components.

    lower: list of component element-lists for degrees 0..i-1 in the engine's
    (parity, action) format.  Returns the ProlongationComponent of degree i.
    Leibniz consistency of the supplied data is re-checked: every supplied
    element must solve the degree-k equations.
    """
    if isinstance(m, LieSuperalgebra):
        m = SymbolAlgebra(m)
    if len(lower) != i:
        raise ProlongationError("need components 0..%d to prolong to %d" % (i - 1, i))
    engine = Prolongation(m, g0=lower[0])
    for k in range(1, i):
        expected = engine.step(k)
        engine.comp[k] = ProlongationComponent(k, expected.elements)
        engine.top = k
        for parity, action in lower[k]:
            if engine._solve_in_component(k, action) is None:
                raise ProlongationError(
                    "lower component %d fails the Leibniz constraints" % k
                )
        engine.comp[k] = ProlongationComponent(k, list(lower[k]))
    return engine.advance(i)


def prolong(m, g0=None, reductions=None, max_degree=None, validate_result=True):
    """Full prolongation pr(m, g0) with optional reductions.

    reductions: list of (degree, subspace) where subspace is either a list in
    reduce_component's format or a callable engine -> such a list (called
    right after that degree is computed).
    """
    if isinstance(m, LieSuperalgebra):
        m = SymbolAlgebra(m)
    if max_degree is None:
        max_degree = m.mu + 8
    engine = Prolongation(m, g0=g0)
    red = {}
    for degree, sub in reductions or []:
        red.setdefault(degree, []).append(sub)
    for subs in red.get(0, []):
        engine.reduce_component(0, subs(engine) if callable(subs) else subs)
    status, stabilized_at = "truncated", None
    i = 0
    while i < max_degree:
        i += 1
        comp = engine.advance(i)
        for subs in red.get(i, []):
            engine.reduce_component(
                i, subs(engine) if callable(subs) else subs
            )
            comp = engine.comp[i]
        if not comp.elements:
            status = "stabilized"
            stabilized_at = i
            break
    metadata = {
        "reductions": sorted(engine.reduced_at),
        "codomain_policy": "cumulative (later steps map into reduced components)",
    }
    if status == "truncated":
        metadata["note"] = "not stabilized by max_degree %d" % max_degree
    algebra = engine.assemble(truncated=(status == "truncated"))
    if validate_result and status == "stabilized":
        report = validate(algebra)
        if report:
            raise ProlongationError(
                "assembled prolongation fails validation: %r" % report[:3]
            )
    return ProlongationResult(
        m, engine, status, stabilized_at, max_degree, algebra,
        metadata,
    )


def apply_reduction(engine, degree, subspace):
    """Spec-level name for in-progress reduction."""
    engine.reduce_component(degree, subspace)
    return engine


# ---------------------------------------------------------------------------
# reduction helpers
# ---------------------------------------------------------------------------

def projective_trace_reduction(engine):
    """The trace part g_1' ~ V* inside g_1 = S^2 V* (x) V for m = V abelian
    with g_0 = gl(V): A_w(u)(v) = w(u) v + (-1)^{|u||v|} w(v) u."""
    m = engine.m
    space = m.space
    n = len(space)
    if m.mu != 1:
        raise ProlongationError("projective reduction expects depth 1")
    out = []
    for a in range(n):
        action = {}
        for b in range(n):
            # matrix M with M e_j = w(e_b) e_j + (-1)^{|e_b||e_j|} w(e_j) e_b,
            # w = dual of basis vector a
            M = [[Scalar(0)] * n for _ in range(n)]
            for j in range(n):
                if a == b:
                    M[j][j] = M[j][j] + Scalar(1)
                if j == a:
                    sgn = -1 if (space[b].parity and space[j].parity) else 1
                    M[b][j] = M[b][j] + Scalar(sgn)
            col = {}
            # coordinates over comp[0] via exact solve against g0 matrices
            flat_target = {
                (i, j): M[i][j] for i in range(n) for j in range(n) if M[i][j]
            }
            if flat_target:
                col = engine_solve_matrix(engine, flat_target)
            if col:
                action[b] = col
        out.append((space[a].parity, action))
    return out


def engine_solve_matrix(engine, flat_target):
    """Express a matrix on m (sparse {(i,j): Scalar}) in comp[0] coordinates."""
    elems = engine.comp[0].elements
    flats = []
    for _, act in elems:
        flats.append(
            {(i, j): s for j, col in act.items() for i, s in col.items()}
        )
    keys = sorted(set(flat_target) | {k for f in flats for k in f})
    pos = {k: i for i, k in enumerate(keys)}
    vecs = [{pos[k]: v for k, v in f.items()} for f in flats]
    tgt = {pos[k]: v for k, v in flat_target.items()}
    coeffs = solve_in_span(vecs, tgt, len(keys))
    if coeffs is None:
        raise ProlongationError("matrix is not in the span of g_0")
    return {t: s for t, s in enumerate(coeffs) if s}
