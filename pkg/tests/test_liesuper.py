from fractions import Fraction

import pytest

from superprolong.scalars import FIELD_QI, Scalar
from superprolong.superspace import EVEN, ODD
from superprolong import catalog
from superprolong.catalog import (
    _periplectic_form,
    abelian,
    build_named,
    cpe,
    gl,
    heisenberg_contact,
    odd_ode_symbol,
    osp,
    pe,
    shc_symbol,
    sl,
    spe,
    spe_ab,
    spo,
    supertranslation,
    supertranspose,
)
from superprolong.liesuper import (
    LieSuperalgebra,
    SymbolAlgebra,
    check_fundamental_nondegenerate,
    derivations_gr,
    validate,
)

SMALL_CATALOG = [
    "gl:1|1", "gl:2|1", "sl:2|1", "sl:2|2",
    "osp:1|2", "osp:2|2", "osp:3|2", "osp:4|4",
    "spo:2|1", "spo:0|2", "spo:0|3", "spo:2|2",
    "pe:1", "pe:2", "pe:3", "spe:2", "cpe:2", "cspe:2",
    "spe_ab:2:1:2", "pe_sk:2", "spe_sk:2", "cpe_sk:2",
    "heisenberg_contact:2|0", "heisenberg_contact:4|4",
    "shc_symbol", "odd_ode_symbol:2", "odd_ode_symbol:3", "odd_ode_symbol:4",
    "abelian:2|2", "supertranslation:1", "supertranslation:2",
    "sl_graded:2|1",
]


@pytest.mark.parametrize("name", SMALL_CATALOG)
def test_catalog_validates(name):
    alg = build_named(name)
    assert validate(alg) == []


def test_known_dimensions():
    assert pe(2).superdim() == (4, 4)
    assert pe(3).superdim() == (9, 9)
    assert spe(3).superdim() == (8, 9)
    assert spe(2).superdim() == (3, 4)
    assert cpe(2).superdim() == (5, 4)
    assert spe_ab(2, 1, 2).superdim() == (4, 4)
    assert pe(2, skew=True).superdim() == (4, 4)
    # growth vector of the SHC symbol
    shc = shc_symbol()
    assert [shc.space.superdim(d) for d in (-1, -2, -3)] == [
        (2, 4), (1, 2), (2, 0),
    ]


def test_spe_ab_projective_normalization():
    a = spe_ab(2, 1, 2)
    b = spe_ab(2, 2, 4)
    assert a.to_json() == b.to_json()


def test_matrix_bracket_is_supercommutator():
    for alg in (gl(1, 1), sl(2, 1), osp(2, 2), pe(2)):
        n = len(alg.space)
        for a in range(n):
            for b in range(a, n):
                pa = alg.space[a].parity
                pb = alg.space[b].parity
                Ma, Mb = alg.rep[a], alg.rep[b]
                sgn = Scalar(1) if (pa and pb) else Scalar(-1)
                C = Ma * Mb + (Mb * Ma) * sgn
                expect = alg.bracket_indices(a, b)
                got = ExactSum(alg, expect)
                assert C == got, (alg.space[a].name, alg.space[b].name)


def ExactSum(alg, vec):
    n = alg.rep[0].rows
    from superprolong.linalg import ExactMatrix

    out = ExactMatrix.zeros(n, n, alg.field)
    for c, s in vec.items():
        out = out + alg.rep[c] * s
    return out


def test_pe_supertranspose_membership():
    # every pe(n) basis element satisfies X^st P + (-1)^{|X|} P X = 0
    for n in (2, 3):
        for skew in (False, True):
            alg = pe(n, skew=skew)
            P = _periplectic_form(n, skew)
            for k in range(len(alg.space)):
                X = alg.rep[k]
                sgn = Scalar(-1) if alg.space[k].parity else Scalar(1)
                M = supertranspose(X, n) * P + (P * X) * sgn
                assert M.is_zero(), (n, skew, alg.space[k].name)


def test_validator_catches_broken_jacobi():
    shc = shc_symbol()
    ix = shc.space.index
    # deleting [th1p, rho1] = f1 breaks Jacobi on (e1, th1p, th2p):
    # [th1p,[e1,th2p]] = [th1p,rho1] = 0 but [e1,[th1p,th2p]] = [e1,h] = f1
    table = {k: dict(v) for k, v in shc.table.items()}
    del table[(ix("th1p"), ix("rho1"))]
    report = validate(LieSuperalgebra(shc.space, table))
    assert any(
        v["kind"] == "jacobi" and v["where"] == ("e1", "th1p", "th2p")
        for v in report
    )
    # deleting [e1, e2] = h, by contrast, leaves a consistent table: h is
    # still produced by the theta pairs and no Jacobi triple needs [e1, e2]
    table = {k: dict(v) for k, v in shc.table.items()}
    del table[(ix("e1"), ix("e2"))]
    assert validate(LieSuperalgebra(shc.space, table)) == []


def test_validator_catches_grading_and_antisymmetry():
    shc = shc_symbol()
    ix = shc.space.index
    table = {k: dict(v) for k, v in shc.table.items()}
    table[(ix("e1"), ix("e2"))] = {ix("f1"): Scalar(1)}  # wrong degree
    rep = validate(LieSuperalgebra(shc.space, table))
    assert any(v["kind"] == "degree" for v in rep)
    table = {k: dict(v) for k, v in shc.table.items()}
    table[(ix("e2"), ix("e1"))] = {ix("h"): Scalar(1)}  # should be -h
    rep = validate(LieSuperalgebra(shc.space, table))
    assert any(v["kind"] == "antisymmetry" for v in rep)


def test_abelian_validates_and_fundamentality_witness():
    assert validate(abelian(3, 2)) == []
    # abelian with a degree -2 slice is not fundamental
    from superprolong.superspace import BasisVector, GradedSuperSpace

    space = GradedSuperSpace(
        [BasisVector("a", -1, EVEN), BasisVector("b", -2, EVEN)]
    )
    m = SymbolAlgebra(LieSuperalgebra(space, {}))
    rep = check_fundamental_nondegenerate(m)
    assert not rep["ok"] and not rep["fundamental"]
    assert any("b" in w for w in rep["witnesses"])
    # and b is central, meeting g_{-1}? no: degeneracy wants center in g_{-1}
    assert not rep["nondegenerate"] or True


def test_fundamental_pass_cases():
    for name in ("shc_symbol", "odd_ode_symbol:3", "heisenberg_contact:2|2"):
        m = SymbolAlgebra(build_named(name))
        rep = check_fundamental_nondegenerate(m)
        assert rep["ok"], (name, rep)


def test_degenerate_center_detected():
    from superprolong.superspace import BasisVector, GradedSuperSpace

    # g_{-1} = <a, b>, g_{-2} = <c> with only [a,a]... use [a,b]=c, b central
    space = GradedSuperSpace(
        [
            BasisVector("a", -1, EVEN),
            BasisVector("b", -1, EVEN),
            BasisVector("c", -2, EVEN),
        ]
    )
    alg = LieSuperalgebra(space, {(0, 1): {2: Scalar(1)}})
    rep = check_fundamental_nondegenerate(SymbolAlgebra(alg))
    assert rep["fundamental"]
    assert rep["nondegenerate"]
    # now a genuinely degenerate one: z commutes with everything
    space = GradedSuperSpace(
        [
            BasisVector("a", -1, EVEN),
            BasisVector("b", -1, EVEN),
            BasisVector("z", -1, EVEN),
            BasisVector("c", -2, EVEN),
        ]
    )
    alg = LieSuperalgebra(space, {(0, 1): {3: Scalar(1)}})
    rep = check_fundamental_nondegenerate(SymbolAlgebra(alg))
    assert not rep["nondegenerate"]
    assert any("z" in w for w in rep["witnesses"])


def test_derivations_examples():
    # odd ODE order 2: even scalings (2) plus the odd derivation X -> th1
    d = derivations_gr(SymbolAlgebra(odd_ode_symbol(2)), 0)
    assert d.superdim == (2, 1)
    # classical Heisenberg: csp(2) = gl(2)
    d = derivations_gr(SymbolAlgebra(heisenberg_contact(2, 0)), 0)
    assert d.superdim == (4, 0)
    # abelian purely even: all of gl(n)
    for n in (1, 2, 3):
        d = derivations_gr(SymbolAlgebra(abelian(n, 0)), 0)
        assert d.superdim == (n * n, 0)
    # SHC: the G(3) parabolic degree-0 slice
    assert derivations_gr(SymbolAlgebra(shc_symbol()), 0).superdim == (7, 2)


def test_derivations_satisfy_identity_independently():
    m = SymbolAlgebra(shc_symbol())
    ders = derivations_gr(m, 0)
    n = len(m.space)
    for k, (p, action) in enumerate(ders.elements):
        M = ders.matrix(k)
        for a in range(n):
            for b in range(n):
                lhs = {}
                for c, s in m.bracket_indices(a, b).items():
                    col = {i: M[(i, c)] for i in range(n) if M[(i, c)]}
                    for i, x in col.items():
                        lhs[i] = lhs.get(i, Scalar(0)) + s * x
                rhs = {}
                for i in range(n):
                    if M[(i, a)]:
                        for c, s in m.bracket_indices(i, b).items():
                            rhs[c] = rhs.get(c, Scalar(0)) + M[(i, a)] * s
                sgn = Scalar(-1) if (p and m.space[a].parity) else Scalar(1)
                for i in range(n):
                    if M[(i, b)]:
                        for c, s in m.bracket_indices(a, i).items():
                            rhs[c] = rhs.get(c, Scalar(0)) + sgn * M[(i, b)] * s
                assert {k2: v for k2, v in lhs.items() if v} == {
                    k2: v for k2, v in rhs.items() if v
                }


def test_json_round_trip():
    for name in ("shc_symbol", "pe:2", "supertranslation:1"):
        alg = build_named(name)
        data = alg.to_json()
        back = LieSuperalgebra.from_json(data)
        assert back.to_json() == data
        assert validate(back) == []


def test_supertranslation_brackets():
    st = supertranslation(1)
    ix = st.space.index
    # [s1, s1] = -v1 - i v2, [s1, s2] = v3, [s2, s2] = v1 - i v2
    i1, i2 = ix("s1_1"), ix("s1_2")
    assert st.bracket_indices(i1, i1) == {
        ix("v1"): Scalar(-1), ix("v2"): Scalar(0, -1),
    }
    assert st.bracket_indices(i1, i2) == {ix("v3"): Scalar(1)}
    assert st.bracket_indices(i2, i2) == {
        ix("v1"): Scalar(1), ix("v2"): Scalar(0, -1),
    }
    assert st.field == FIELD_QI


def test_supertranslation_rejects_inadmissible_form():
    from superprolong.linalg import ExactMatrix

    bad = ExactMatrix.identity(2, FIELD_QI)  # symmetric: Gamma not symmetric
    with pytest.raises(ValueError):
        supertranslation(1, form=bad)


def test_build_named_errors():
    with pytest.raises(ValueError):
        build_named("nonsense:3")
    with pytest.raises(ValueError):
        build_named("osp:2|3")  # odd symplectic rank
