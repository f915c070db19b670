import pytest

from superprolong.scalars import Scalar
from superprolong.superspace import EVEN, ODD
from superprolong.catalog import (
    abelian,
    cpe,
    gl,
    heisenberg_contact,
    odd_ode_scalings,
    odd_ode_symbol,
    shc_symbol,
    spe,
    spo,
)
from superprolong.liesuper import SymbolAlgebra, validate
from superprolong.prolong import (
    Prolongation,
    ProlongationError,
    projective_trace_reduction,
    prolong,
    prolong_step,
)
from superprolong.spencer import CochainSlice
from superprolong.linalg import rank_rows

from conftest import g0_of


def test_odd_ode_scaling_prolongations():
    res = prolong(SymbolAlgebra(odd_ode_symbol(3)), g0=odd_ode_scalings(3))
    assert res.status == "stabilized"
    assert res.component_superdim(1) == (1, 0)
    assert res.component_superdim(2) == (0, 1)
    assert res.component_superdim(3) == (0, 0)
    assert res.total_superdim == (4, 4)

    res = prolong(SymbolAlgebra(odd_ode_symbol(2)), g0=odd_ode_scalings(2))
    assert res.component_superdim(1) == (1, 1)
    assert res.component_superdim(2) == (0, 1)
    assert res.total_superdim == (4, 4)


def test_prolong_step_explicit_and_stabilization_soundness():
    m = SymbolAlgebra(odd_ode_symbol(3))
    engine = Prolongation(m, g0=odd_ode_scalings(3))
    comps = [list(engine.comp[0].elements)]
    for i in (1, 2, 3):
        comp = prolong_step(m, comps, i)
        comps.append(list(comp.elements))
    assert [len(c) for c in comps] == [2, 1, 1, 0]
    # after a zero component, one more step is still zero
    comp4 = prolong_step(m, comps, 4)
    assert len(comp4.elements) == 0


def test_prolong_step_rejects_bad_lower_data():
    m = SymbolAlgebra(odd_ode_symbol(3))
    engine = Prolongation(m, g0=odd_ode_scalings(3))
    good = engine.advance(1)
    bad_action = {0: {0: Scalar(1)}}  # X -> T1 is not a Leibniz map
    with pytest.raises(ProlongationError):
        prolong_step(
            m, [list(engine.comp[0].elements), [(EVEN, bad_action)]], 2
        )


def test_transitivity_of_components():
    res = prolong(SymbolAlgebra(shc_symbol()))
    eng = res.engine
    deg1 = eng.space.indices_of_degree(-1)
    for k in range(1, eng.top + 1):
        for par, action in eng.comp[k].elements:
            assert any(action.get(b) for b in deg1)


def test_assembled_algebra_validates_and_is_graded():
    res = prolong(SymbolAlgebra(odd_ode_symbol(2)), g0=odd_ode_scalings(2))
    alg = res.algebra
    assert validate(alg) == []
    assert alg.space.superdim() == (4, 4)
    # g0-equivariance: [g0, g_i] stays in g_i by construction; the bracket
    # tables of the assembled algebra respect the Z-degree
    for (a, b), vec in alg.table.items():
        for c in vec:
            assert (
                alg.space[c].degree
                == alg.space[a].degree + alg.space[b].degree
            )


def test_reduction_noop_and_zero():
    m = SymbolAlgebra(abelian(2, 1))
    g0 = g0_of(gl(2, 1))

    def identity_reduction(engine):
        out = []
        for par, action in engine.comp[1].elements:
            out.append((par, {b: dict(v) for b, v in action.items()}))
        return out

    base = prolong(m, g0=g0, reductions=[(1, projective_trace_reduction)])
    noop = prolong(m, g0=g0, reductions=[(1, identity_reduction)])
    full = prolong(m, g0=g0)
    assert noop.per_degree() == full.per_degree()

    zero = prolong(m, g0=g0, reductions=[(1, lambda e: [])])
    assert zero.status == "stabilized"
    total = zero.total_superdim
    m_dims = m.space.superdim()
    g0_dims = (
        sum(1 for p, _ in zero.engine.comp[0].elements if p == EVEN),
        sum(1 for p, _ in zero.engine.comp[0].elements if p == ODD),
    )
    assert total == (m_dims[0] + g0_dims[0], m_dims[1] + g0_dims[1])
    assert base.component_superdim(2) == (0, 0)


def test_projective_reduction_finite_type():
    for (p, q) in [(2, 1), (1, 2), (2, 2)]:
        res = prolong(
            SymbolAlgebra(abelian(p, q)),
            g0=g0_of(gl(p, q)),
            reductions=[(1, projective_trace_reduction)],
        )
        assert res.status == "stabilized"
        assert res.component_superdim(1) == (p, q)  # trace part ~ V*
        assert res.component_superdim(2) == (0, 0)
        assert validate(res.algebra) == []


def test_incompatible_reduction_rejected():
    # a non-gl(V)-invariant line inside g_1 must be refused
    m = SymbolAlgebra(abelian(2, 0))

    def bad_reduction(engine):
        par, action = engine.comp[1].elements[0]
        return [(par, {b: dict(v) for b, v in action.items()})]

    with pytest.raises(ProlongationError):
        prolong(m, g0=g0_of(gl(2, 0)), reductions=[(1, bad_reduction)])


def test_spencer_prolong_cross_check_odd_ode():
    res = prolong(SymbolAlgebra(odd_ode_symbol(2)), g0=odd_ode_scalings(2))
    g = res.algebra
    for i in (1, 2, 3):
        sl = CochainSlice(g, i, 1)
        ker = len(sl.basis) - rank_rows(sl.matrix_rows, len(sl.basis))
        assert ker == sum(res.component_superdim(i))


def test_heisenberg_contact_prolongation_is_infinite_growth():
    # purely even contact symbol: pr = contact algebra, does not stabilize
    m = SymbolAlgebra(heisenberg_contact(2, 0))
    res = prolong(m, max_degree=4, validate_result=False)
    assert res.status == "truncated"
    assert all(
        sum(res.component_superdim(k)) > 0 for k in range(1, 5)
    )


def test_spo_purely_odd_totals():
    for n in (2, 3):
        res = prolong(SymbolAlgebra(abelian(0, n)), g0=g0_of(spo(0, n)))
        t = res.total_superdim
        assert t[0] + t[1] == 2 ** n - 1
        assert res.status == "stabilized"


def test_g0_must_be_derivations():
    from superprolong.linalg import ExactMatrix

    m = SymbolAlgebra(odd_ode_symbol(2))
    bad = ExactMatrix(
        [[0, 0, 0], [0, 0, 0], [1, 0, 0]]  # X -> th2 has degree -1, not 0
    )
    with pytest.raises(ProlongationError):
        Prolongation(m, g0=[(EVEN, bad)])
