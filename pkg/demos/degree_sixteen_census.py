"""Census of the degree-16 polygon invariants over Q_2.

The branch-and-prune search expands 1602 branches to find every polygon:
340 distinct hull shapes refining into 447 point configurations.  Pruning
matters: without the weak-validity test the same search expands around
200,000 branches.
"""

from collections import Counter

from ramify import BinomialContext, enumerate_fine_polygons, enumerate_ram_polygons, make_field

ctx = BinomialContext(make_field(2, 1, 1, 1))

hulls, stats = enumerate_ram_polygons(ctx, 16)
print(f"degree 16 over Q_2: {len(hulls)} hull shapes from {stats.branches_visited} branches")

fine_total = 0
per_hull = Counter()
for P in hulls:
    fines, _ = enumerate_fine_polygons(ctx, P)
    fine_total += len(fines)
    per_hull[len(fines)] += 1
print(f"refining into {fine_total} fine polygons")
print("hull shapes by number of refinements:", dict(sorted(per_hull.items())))

steepest = max(hulls, key=lambda P: P.J0)
print(f"\nlargest leftmost ordinate: J0 = {steepest.J0} on {list(steepest.vertices)}")

by_vertices = Counter(len(P.vertices) for P in hulls)
print("hull shapes by vertex count:", dict(sorted(by_vertices.items())))

print("\nthe first few polygons in canonical order:")
for P in hulls[:5]:
    print(f"  {list(P.vertices)}")
