"""Tour of the prolongation engine.

Runs the flagship computations: the super Hilbert-Cartan symbol (total
dimension (17|14)), the odd-ODE symbols with their scaling reductions, the
periplectic family on R^{2|2}, and a projective (higher-order) reduction.
"""

from superprolong import SymbolAlgebra, build_named, prolong
from superprolong.catalog import (
    abelian, cpe, gl, odd_ode_scalings, odd_ode_symbol, shc_symbol, spe_ab,
)
from superprolong.prolong import projective_trace_reduction


def show(title, res):
    print("== %s" % title)
    for k, d in sorted(res.per_degree().items()):
        print("   g_%-3d (%d|%d)" % (k, d[0], d[1]))
    print("   total (%d|%d), %s" % (*res.total_superdim, res.status))
    print()


def g0_of(alg):
    return [(alg.space[k].parity, alg.rep[k]) for k in range(len(alg.space))]


# The symbol of a generic (5|6)-dimensional superdistribution with growth
# vector (2|4, 1|2, 2|0); its full prolongation is the exceptional Lie
# superalgebra of dimension (17|14).
show("pr(shc_symbol)", prolong(SymbolAlgebra(shc_symbol())))

# Contact symbols of odd ODEs, reduced to the two line scalings.  Order 2
# recovers the consecutive-root grading of sl(2|1); order 3 has height 2
# with a purely odd top component.
for n in (2, 3):
    res = prolong(SymbolAlgebra(odd_ode_symbol(n)), g0=odd_ode_scalings(n))
    show("pr(odd_ode_symbol(%d), scalings)" % n, res)

# Periplectic structures on R^{2|2}: the conformal extension prolongs to
# the dimensions of pe(3); the a=1, b=n member to those of spe(3); the
# skew-periplectic variant never stabilizes (odd directions keep coming).
V = SymbolAlgebra(abelian(2, 2))
show("pr(R^{2|2}, cpe(2))", prolong(V, g0=g0_of(cpe(2))))
show("pr(R^{2|2}, spe_{1,2}(2))", prolong(V, g0=g0_of(spe_ab(2, 1, 2))))
show(
    "pr(R^{2|2}, cpe^sk(2)) truncated at 5",
    prolong(V, g0=g0_of(cpe(2, skew=True)), max_degree=5,
            validate_result=False),
)

# Projective superstructure: compute g_1 = S^2 V* (x) V over gl(V), cut it
# down to the trace part ~ V*, and watch the next step vanish.
res = prolong(
    SymbolAlgebra(abelian(2, 1)),
    g0=g0_of(gl(2, 1)),
    reductions=[(1, projective_trace_reduction)],
)
show("projective reduction on R^{2|1}", res)

# Supertranslation algebras over Q(i): dim V = 3, Pauli Clifford module.
for N in (1, 2):
    res = prolong(SymbolAlgebra(build_named("supertranslation:%d" % N)))
    show("pr(supertranslation N=%d)" % N, res)
