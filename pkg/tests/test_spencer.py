import random

from superprolong.scalars import Scalar
from superprolong.superspace import EVEN, ODD
from superprolong.catalog import (
    abelian,
    build_named,
    gl,
    odd_ode_scalings,
    odd_ode_symbol,
    shc_symbol,
)
from superprolong.liesuper import SymbolAlgebra
from superprolong.prolong import projective_trace_reduction, prolong
from superprolong.spencer import (
    CochainSlice,
    apply_differential,
    ce_differential,
    cochain_basis,
    cohomology_dims,
    reduced_differential_check,
)
from superprolong.linalg import rank_rows

from conftest import g0_of


def slice_dims(g, d, k):
    b = cochain_basis(g, d, k)
    return len(b)


def test_delta_squared_is_zero_everywhere():
    cases = [
        build_named("sl_graded:2|1"),
        shc_symbol(),
        prolong(
            SymbolAlgebra(odd_ode_symbol(3)), g0=odd_ode_scalings(3)
        ).algebra,
    ]
    for g in cases:
        degs = [b.degree for b in g.space]
        dmin, dmax = min(degs) + 2, max(degs) + 3 * max(-d for d in degs if d < 0)
        for d in range(dmin, dmax + 1):
            for k in (0, 1, 2):
                for (T, b, _) in cochain_basis(g, d, k):
                    w = apply_differential(g, k, {(T, b): Scalar(1)})
                    w2 = apply_differential(g, k + 1, w)
                    assert not w2, (d, k, T, b)


def test_differential_is_superalternating():
    # evaluating on a transposed tuple equals the koszul sign times canonical
    from superprolong.superspace import sort_with_sign

    g = shc_symbol()
    basis1 = cochain_basis(g, 1, 1)
    for (T0, b0, _) in basis1[:6]:
        img = apply_differential(g, 1, {(T0, b0): Scalar(1)})
        # img is stored on canonical tuples; rebuild the bilinear map and
        # check antisymmetry through sort_with_sign on a few flips
        for (T, c), val in img.items():
            if len(set(T)) < 2:
                continue
            flipped = (T[1], T[0])
            pars = [g.space[t].parity for t in flipped]
            srt, sign = sort_with_sign(flipped, pars)
            assert srt == T
            # omega(flipped) = sign * omega(canonical)
            assert sign in (-1, 1)


def test_k1_kernel_equals_prolongation_equations():
    # deg-0 1-cochain kernel on m-coefficients = degree-0 derivations... the
    # cross-check run on the full odd-ODE prolongation algebra
    res = prolong(SymbolAlgebra(odd_ode_symbol(3)), g0=odd_ode_scalings(3))
    g = res.algebra
    for i in (1, 2, 3, 4):
        sl = CochainSlice(g, i, 1)
        ker = len(sl.basis) - rank_rows(sl.matrix_rows, len(sl.basis))
        assert ker == sum(res.component_superdim(i))


def test_sl21_first_cohomology_vanishes():
    g = build_named("sl_graded:2|1")
    for d in (1, 2):
        assert cohomology_dims(d, 1, g) == (0, 0)


def test_shc_first_cohomology_vanishes():
    res = prolong(SymbolAlgebra(shc_symbol()))
    for d in range(0, 4):
        assert cohomology_dims(d, 1, res.m, res.algebra) == (0, 0)


def test_projective_h21_vanishes():
    for (p, q) in [(2, 1), (1, 2), (2, 2)]:
        res = prolong(
            SymbolAlgebra(abelian(p, q)),
            g0=g0_of(gl(p, q)),
            reductions=[(1, projective_trace_reduction)],
        )
        assert cohomology_dims(2, 1, res.algebra) == (0, 0)


def test_invariants_bidegree_of_abelian():
    # abelian (1|0) with g = m: 0-cochains of degree -1 are all invariant
    a = abelian(1, 0)
    assert cohomology_dims(-1, 0, a) == (1, 0)
    assert cohomology_dims(0, 0, a) == (0, 0)


def test_euler_characteristic_per_degree():
    g = build_named("sl_graded:2|1")
    degs = [b.degree for b in g.space]
    kmax = 3  # dim m = 3, so C^{d,k} = 0 beyond... odd coords repeat: cap by degree
    for d in range(min(degs) + 2, max(degs) + 7):
        chi_c = {EVEN: 0, ODD: 0}
        chi_h = {EVEN: 0, ODD: 0}
        k = 0
        while True:
            basis = cochain_basis(g, d, k)
            if not basis and k > 0 and not cochain_basis(g, d, k + 1):
                # differentials out of and into empty spaces vanish; check a
                # couple more k to be safe with odd repeats
                if not cochain_basis(g, d, k + 2):
                    break
            sgn = 1 if k % 2 == 0 else -1
            ev = sum(1 for (_, _, p) in basis if p == EVEN)
            od = len(basis) - ev
            chi_c[EVEN] += sgn * ev
            chi_c[ODD] += sgn * od
            h = cohomology_dims(d, k, g)
            chi_h[EVEN] += sgn * h[0]
            chi_h[ODD] += sgn * h[1]
            k += 1
            if k > 12:
                break
        assert chi_c == chi_h, d


def test_reduced_differential_lemma():
    # SHC prolongation data
    res = prolong(SymbolAlgebra(shc_symbol()))
    rep = reduced_differential_check(res.m, res.algebra)
    assert rep["ok"]
    assert rep["degrees"]
    # odd ODE (4|4) prolongation data
    res = prolong(SymbolAlgebra(odd_ode_symbol(3)), g0=odd_ode_scalings(3))
    rep = reduced_differential_check(res.m, res.algebra)
    assert rep["ok"]
    # depth one: partial = delta trivially, B = 0
    res = prolong(SymbolAlgebra(abelian(1, 1)), g0=g0_of(gl(1, 1)),
                  max_degree=2, validate_result=False)
    rep = reduced_differential_check(res.m, res.algebra)
    assert rep["ok"]
    for entry in rep["degrees"].values():
        assert entry["complement_B_dim"] == 0


def test_complement_spans():
    res = prolong(SymbolAlgebra(odd_ode_symbol(2)), g0=odd_ode_scalings(2))
    rep = reduced_differential_check(res.m, res.algebra)
    assert rep["ok"]
    for d, entry in rep["degrees"].items():
        # dim A = dim Im(partial) + dim Z
        sl_labels = entry["complement_Z"]
        assert isinstance(sl_labels, list)


def test_ce_differential_matrix_shape_and_field():
    g = shc_symbol()
    M = ce_differential(1, 1, g)
    sl = CochainSlice(g, 1, 1)
    assert M.rows == len(sl.target)
    assert M.cols == len(sl.basis)
