"""Contact symmetries of odd ODEs xi^(n) = F(x, xi, ..., xi^(n-1)).

The solver searches generating superfunctions c(x) * {1, xi, xi', xi xi'},
prolongs the contact field to order n, imposes tangency modulo the
equation, and prints the Tanaka bound pr(symbol, scalings) next to the
result: reaching the bound certifies that the ansatz caught everything.
"""

from superprolong import JetContext, OdeSpec, contact_vf, determine_symmetries
from superprolong import lagrange_bracket, parse_jet, prolong_field

ctx = JetContext(1)

# Generating superfunctions and their contact fields on J^1.
for text in ("xi1", "x", "xi", "xi*xi1"):
    f = parse_jet(ctx, text)
    print("S_{%s} = %s" % (text, contact_vf(f).to_str()))

# Prolongation to higher jets: iterated total derivatives, truncated.
f = parse_jet(ctx, "x*xi - x^2*xi1")
print("\nprolongation of S_{x*xi - x^2*xi1} to J^2:")
print("  ", prolong_field(f, 2).to_str())

# The four model equations.
for order, rhs, deg in [
    (2, "0", 3),
    (3, "0", 3),
    (3, "xi2", 2),
    (3, "xi*xi1*xi2", 2),
]:
    res = determine_symmetries(OdeSpec(order, rhs, poly_degree=deg))
    print("\nxi^(%d) = %s" % (order, rhs if rhs != "0" else "0"))
    print("   dimension (%d|%d), bound (%d|%d)%s" % (
        *res.superdim, *res.bound,
        "  [completeness certified]" if res.certified_complete else "",
    ))
    for g in res.generators:
        grading = "%+d" % g.grading if g.grading is not None else " ?"
        print("   %s  %s" % (grading, g.to_str()))

# The Lagrange bracket table of the relative-invariant example.
res = determine_symmetries(OdeSpec(3, "xi*xi1*xi2", poly_degree=2))
print("\nLagrange bracket table for xi''' = xi*xi'*xi'':")
names = [g.to_str() for g in res.generators]
width = max(len(s) for row in res.bracket_table for s in row)
for nm, row in zip(names, res.bracket_table):
    print("   %-14s %s" % (nm, "  ".join(s.rjust(width) for s in row)))
