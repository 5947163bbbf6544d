"""Walk through the classification of ramified quadratic extensions of Q_2.

Degree 2 over Q_2 is the smallest fully wild case and everything can be
printed in full: two polygon invariants, one residue class each, one
uniformizer class each, and reduced templates whose 6 polynomials hit the
6 ramified quadratic extensions of Q_2 exactly once each (see
docs/quadratic-extensions-of-q2.md for the classical count).
"""

from ramify import (
    BinomialContext,
    cardinality,
    enumerate_invariants,
    expand_template,
    make_field,
    reduce_template,
    template_for_invariant,
    truncate_krasner,
)
from ramify.analyzer import render_integer_polynomial

ctx = BinomialContext(make_field(2, 1, 1, 1))

invariants, stats = enumerate_invariants(ctx, 2, "unif")
print(f"degree 2 over Q_2: {len(invariants)} uniformizer-level invariants")
print(f"(search expanded {stats.branches_visited} branches)\n")

total = 0
for inv in invariants:
    polygon = inv.res.polygon
    print(f"fine polygon {list(polygon.points)}")
    print(f"  residues  {[str(rho) for rho in inv.res.residues]}, phi0 = {inv.phi0}")

    template = template_for_invariant(ctx, inv)
    template = truncate_krasner(template, polygon.J0)
    print(f"  Krasner cutoff: digits at pi-powers >= {template.cutoff} are zeroed")
    print(f"  polynomials before uniformizer-change reduction: {cardinality(template)}")

    reduced = reduce_template(ctx, template, inv)
    polynomials = [render_integer_polynomial(f) for f in expand_template(reduced)]
    print(f"  after reduction: {cardinality(reduced)} polynomials")
    for text in polynomials:
        print(f"    {text}")
    total += len(polynomials)
    print()

print(f"{total} polynomials in total, one per ramified quadratic extension of Q_2")
