"""Residue decorations and uniformizer classes over a larger residue field.

Over Q_p the unit group of the residue field is tiny and most equivalence
classes collapse; taking K unramified quadratic over Q_3 (residue field
F_9) shows the twist machinery doing real work: residues are assigned
orbit by orbit, and the admissible uniformizer digits split into classes.
"""

from ramify import (
    BinomialContext,
    admissible_phi0,
    enumerate_fine_polygons,
    enumerate_ram_polygons,
    enumerate_residue_classes,
    enumerate_unif_classes,
    make_field,
)

K = make_field(3, 2, 1, "g")  # unramified quadratic extension of Q_3
ctx = BinomialContext(K)
print(f"base field: p=3, residue field F_9 = F_3[x]/(x^2+1), gamma = {K.gamma}")

polygons, _ = enumerate_ram_polygons(ctx, 3)
print(f"\ndegree 3: {len(polygons)} polygon shapes")

for P in polygons:
    for Pstar in enumerate_fine_polygons(ctx, P)[0]:
        decorated, stats = enumerate_residue_classes(ctx, Pstar)
        print(f"\nfine polygon {list(Pstar.points)}:")
        print(f"  {len(decorated)} residue classes ({stats.branches_visited} branches)")
        for Pres in decorated:
            residues = [str(rho) for rho in Pres.residues]
            phi0s = sorted(str(x) for x in admissible_phi0(ctx, Pres))
            refined, _ = enumerate_unif_classes(ctx, Pres)
            reps = [str(inv.phi0) for inv in refined]
            print(
                f"  residues {residues}: admissible phi0 {phi0s}, "
                f"{len(refined)} classes with representatives {reps}"
            )
