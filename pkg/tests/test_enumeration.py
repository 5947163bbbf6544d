import itertools

import pytest

from ramify.binomials import BinomialContext, beta
from ramify.enumeration import (
    Level,
    enumerate_fine_polygons,
    enumerate_invariants,
    enumerate_ram_polygons,
    enumerate_residue_classes,
    enumerate_unif_classes,
)
from ramify.polygons import FinePolygon, FinePolygonWithResidues, RamPolygon
from ramify.residue_field import make_field
from ramify.validity import (
    admissible_phi0,
    equivalent_res,
    equivalent_with_unif,
    is_valid_fine,
    is_valid_ram,
    is_valid_with_unif,
)


def test_degree_two_over_q2(ctx_q2):
    polys, stats = enumerate_ram_polygons(ctx_q2, 2)
    assert [P.vertices for P in polys] == [((1, 1), (2, 0)), ((1, 2), (2, 0))]
    assert stats.results == 2


@pytest.mark.parametrize("p,n", [(2, 3), (2, 5), (3, 4), (5, 6), (2, 15)])
def test_tame_degrees_have_one_polygon(p, n):
    ctx = BinomialContext(make_field(p, 1, 1, 1))
    polys, _ = enumerate_ram_polygons(ctx, n)
    assert [P.vertices for P in polys] == [((1, 0), (n, 0))]


def test_degree_one_is_trivial(ctx_q2):
    polys, _ = enumerate_ram_polygons(ctx_q2, 1)
    assert [P.vertices for P in polys] == [((1, 0),)]


@pytest.mark.parametrize("p,n", [(2, 2), (2, 4), (2, 6), (2, 8), (2, 12), (3, 3), (3, 9)])
def test_pruned_equals_unpruned(p, n):
    ctx = BinomialContext(make_field(p, 1, 1, 1))
    pruned, s1 = enumerate_ram_polygons(ctx, n, prune=True)
    unpruned, s2 = enumerate_ram_polygons(ctx, n, prune=False)
    assert pruned == unpruned
    assert s1.branches_visited <= s2.branches_visited
    for P in pruned:
        f1, _ = enumerate_fine_polygons(ctx, P, prune=True)
        f2, _ = enumerate_fine_polygons(ctx, P, prune=False)
        assert f1 == f2


def test_every_output_is_valid(ctx_q2):
    for n in (2, 4, 6, 8):
        polys, _ = enumerate_ram_polygons(ctx_q2, n)
        for P in polys:
            assert is_valid_ram(ctx_q2, P).ok
            fines, _ = enumerate_fine_polygons(ctx_q2, P)
            for Ps in fines:
                assert is_valid_fine(ctx_q2, Ps).ok
                assert Ps.hull == P


def test_fine_enumeration_examples(ctx_q2):
    only, _ = enumerate_fine_polygons(ctx_q2, RamPolygon(2, 2, ((1, 2), (2, 0))))
    assert [Ps.points for Ps in only] == [((1, 2), (2, 0))]

    fines, _ = enumerate_fine_polygons(ctx_q2, RamPolygon(2, 8, ((1, 7), (8, 0))))
    assert ((1, 7), (2, 6), (4, 4), (8, 0)) in {Ps.points for Ps in fines}

    for P in enumerate_ram_polygons(ctx_q2, 6)[0]:
        for Ps in enumerate_fine_polygons(ctx_q2, P)[0]:
            assert {
                (x, J) for x, J in Ps.points if J == 0
            } == {(2, 0), (4, 0), (6, 0)}


def test_fine_enumeration_rejects_invalid_polygon(ctx_q2):
    with pytest.raises(ValueError):
        enumerate_fine_polygons(ctx_q2, RamPolygon(2, 2, ((1, 3), (2, 0))))


def test_residue_classes_trivial_over_f2(ctx_q2):
    for n in (2, 4, 8):
        for P in enumerate_ram_polygons(ctx_q2, n)[0]:
            for Ps in enumerate_fine_polygons(ctx_q2, P)[0]:
                decorated, _ = enumerate_residue_classes(ctx_q2, Ps)
                assert len(decorated) == 1


def test_residue_classes_q3_example(ctx_q3):
    Ps = FinePolygon(3, 3, ((1, 1), (3, 0)))
    decorated, _ = enumerate_residue_classes(ctx_q3, Ps)
    assert len(decorated) == 1


def brute_residue_classes(ctx, Pstar):
    """Oracle: full cartesian enumeration, validity filter, equivalence classes."""
    n = Pstar.n
    units = list(ctx.base.fq.units())
    wild = [(x, J) for _, x, J in Pstar.wild_points() if J > 0]
    all_valid = []
    for combo in itertools.product(units, repeat=len(wild)):
        chosen = dict(zip((x for x, _ in wild), combo))
        residues = tuple(
            chosen.get(x, beta(ctx, n, x)) for x, _ in Pstar.points
        )
        Pres = FinePolygonWithResidues(Pstar, residues)
        if admissible_phi0(ctx, Pres):
            all_valid.append(Pres)
    classes = []
    for Pres in all_valid:
        if not any(equivalent_res(ctx, Pres, rep) for rep in classes):
            classes.append(Pres)
    return all_valid, classes


@pytest.mark.parametrize(
    "p,f,n,points",
    [
        (3, 1, 3, ((1, 1), (3, 0))),
        (3, 1, 3, ((1, 3), (3, 0))),
        (3, 2, 3, ((1, 3), (3, 0))),
        (2, 2, 4, ((1, 5), (2, 2), (4, 0))),
        (2, 2, 4, ((1, 6), (2, 2), (4, 0))),
    ],
)
def test_residue_classes_match_cartesian_oracle(p, f, n, points):
    ctx = BinomialContext(make_field(p, f, 1, "g" if f > 1 else 1))
    Pstar = FinePolygon(p, n, points)
    assert is_valid_fine(ctx, Pstar).ok
    decorated, _ = enumerate_residue_classes(ctx, Pstar)
    all_valid, classes = brute_residue_classes(ctx, Pstar)
    # same number of classes, pairwise inequivalent, and all classes covered
    assert len(decorated) == len(classes)
    for A, B in itertools.combinations(decorated, 2):
        assert not equivalent_res(ctx, A, B)
    for Pres in decorated:
        assert admissible_phi0(ctx, Pres)
        assert any(equivalent_res(ctx, Pres, other) for other in all_valid)
    for Pres in all_valid:
        assert sum(equivalent_res(ctx, Pres, rep) for rep in decorated) == 1


def test_unif_classes_examples(ctx_q2, ctx_q3):
    one2 = ctx_q2.base.fq.one
    Pres2 = FinePolygonWithResidues(
        FinePolygon(2, 2, ((1, 2), (2, 0))), (one2, one2)
    )
    refined, _ = enumerate_unif_classes(ctx_q2, Pres2)
    assert [inv.phi0 for inv in refined] == [one2]

    one3 = ctx_q3.base.fq.one
    two3 = ctx_q3.base.fq.from_int(2)
    Pres3 = FinePolygonWithResidues(
        FinePolygon(3, 3, ((1, 1), (3, 0))), (one3, one3)
    )
    refined3, _ = enumerate_unif_classes(ctx_q3, Pres3)
    assert sorted(inv.phi0 for inv in refined3) == [one3, two3]


def test_unif_classes_pairwise_inequivalent_and_valid(ctx_q3):
    K = make_field(3, 2, 1, "g")
    ctx = BinomialContext(K)
    Pstar = FinePolygon(3, 3, ((1, 3), (3, 0)))
    for Pres in enumerate_residue_classes(ctx, Pstar)[0]:
        refined, _ = enumerate_unif_classes(ctx, Pres)
        for inv in refined:
            assert is_valid_with_unif(ctx, inv).ok
        for A, B in itertools.combinations(refined, 2):
            assert not equivalent_with_unif(ctx, A, B)
        # every admissible phi0 is equivalent to exactly one representative
        for phi0 in admissible_phi0(ctx, Pres):
            from ramify.polygons import InvariantWithUnif

            cand = InvariantWithUnif(Pres, phi0)
            assert sum(equivalent_with_unif(ctx, cand, rep) for rep in refined) == 1


def test_enumerate_invariants_counts(ctx_q2, ctx_q3):
    invs, _ = enumerate_invariants(ctx_q2, 2, Level.UNIF)
    assert len(invs) == 2
    rams, _ = enumerate_invariants(ctx_q2, 3, "ram")
    assert len(rams) == 1
    fines, _ = enumerate_invariants(ctx_q3, 3, Level.FINE)
    assert [Ps.points for Ps in fines] == [
        ((1, 1), (3, 0)),
        ((1, 2), (3, 0)),
        ((1, 3), (3, 0)),
    ]


def test_enumeration_deterministic_across_runs_and_workers(ctx_q2):
    a, sa = enumerate_ram_polygons(ctx_q2, 8)
    b, sb = enumerate_ram_polygons(ctx_q2, 8)
    c, sc = enumerate_ram_polygons(ctx_q2, 8, workers=3)
    assert a == b == c
    assert sa.branches_visited == sb.branches_visited == sc.branches_visited


def test_stats_count_results(ctx_q2):
    polys, stats = enumerate_ram_polygons(ctx_q2, 4)
    assert stats.results == len(polys) <= stats.branches_visited
