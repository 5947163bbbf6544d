import pytest

from ramify.analyzer import fine_of, render_integer_polynomial
from ramify.enumeration import (
    enumerate_fine_polygons,
    enumerate_invariants,
    enumerate_ram_polygons,
)
from ramify.polygons import FinePolygon, FinePolygonWithResidues, RamPolygon
from ramify.templates import (
    cardinality,
    compute_Sm,
    eisenstein_template,
    expand_template,
    reduce_template,
    template_for_fine,
    template_for_invariant,
    template_for_polygon,
    truncate_krasner,
)


def test_eisenstein_template_spec_examples(ctx_q2, ctx_q3):
    T = eisenstein_template(ctx_q2, 2)
    one2, zero2 = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    assert T.slot(0, 1) == {one2}
    assert T.slot(1, 0) == {zero2} and T.slot(0, 0) == {zero2}
    assert T.slot(1, 1) == {zero2, one2}
    assert T.cutoff is None

    T3 = eisenstein_template(ctx_q3, 3)
    e3 = ctx_q3.base.fq.from_int
    assert T3.slot(0, 1) == {e3(1), e3(2)}
    for i in range(3):
        assert T3.slot(i, 0) == {e3(0)}


def test_template_for_polygon_spec_examples(ctx_q2):
    one, zero = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    T = template_for_polygon(ctx_q2, RamPolygon(2, 2, ((1, 2), (2, 0))))
    assert T.slot(1, 1) == {zero}
    assert T.slot(0, 1) == {one}
    T2 = template_for_polygon(ctx_q2, RamPolygon(2, 2, ((1, 1), (2, 0))))
    assert T2.slot(1, 1) == {one}
    tame = template_for_polygon(ctx_q2, RamPolygon(2, 3, ((1, 0), (3, 0))))
    assert tame.slot(1, 1) == {zero, one} and tame.slot(2, 1) == {zero, one}


def test_template_for_fine_degree_eight(ctx_q2):
    one, zero = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    Ps = FinePolygon(2, 8, ((1, 7), (2, 6), (4, 4), (8, 0)))
    T = template_for_fine(ctx_q2, Ps)
    for i in (7, 6, 4):
        assert T.slot(i, 1) == {one}
    assert T.slot(5, 1) == {zero}


def test_template_for_invariant_spec_examples(ctx_q2, ctx_q3):
    one, zero = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    invs, _ = enumerate_invariants(ctx_q2, 2, "unif")
    by_J0 = {inv.res.polygon.J0: inv for inv in invs}
    T1 = template_for_invariant(ctx_q2, by_J0[1])
    assert T1.slot(0, 1) == {one} and T1.slot(1, 1) == {one}
    T2 = template_for_invariant(ctx_q2, by_J0[2])
    assert T2.slot(0, 1) == {one} and T2.slot(1, 1) == {zero}

    two = ctx_q3.base.fq.from_int(2)
    Pres3 = FinePolygonWithResidues(
        FinePolygon(3, 3, ((1, 1), (3, 0))),
        (ctx_q3.base.fq.one, ctx_q3.base.fq.one),
    )
    from ramify.polygons import InvariantWithUnif

    T3 = template_for_invariant(ctx_q3, InvariantWithUnif(Pres3, two))
    assert T3.slot(0, 1) == {two}


def test_truncate_krasner_cutoffs(ctx_q2):
    T = eisenstein_template(ctx_q2, 2)
    assert truncate_krasner(T, 2).cutoff == 4   # keep digits k <= 3
    assert truncate_krasner(T, 1).cutoff == 3   # keep digits k <= 2
    assert truncate_krasner(T, 0).cutoff == 2   # keep digits k <= 1
    zero = ctx_q2.base.fq.zero
    truncated = truncate_krasner(T, 1)
    assert truncated.slot(0, 3) == {zero}
    assert truncated.slot(1, 2) == {zero, ctx_q2.base.fq.one}


def test_truncated_eisenstein_count(ctx_q2):
    T = truncate_krasner(eisenstein_template(ctx_q2, 2), 1)
    assert cardinality(T) == 8
    assert len(list(expand_template(T))) == 8


def test_expand_requires_cutoff(ctx_q2):
    with pytest.raises(ValueError):
        list(expand_template(eisenstein_template(ctx_q2, 2)))
    with pytest.raises(ValueError):
        cardinality(eisenstein_template(ctx_q2, 2))


def test_empty_slot_gives_zero_cardinality(ctx_q2):
    T = truncate_krasner(eisenstein_template(ctx_q2, 2), 1)
    T = T.with_slots({(1, 1): frozenset()})
    assert cardinality(T) == 0
    assert list(expand_template(T)) == []


def test_compute_Sm_spec_examples(ctx_q2):
    one = ctx_q2.base.fq.one
    Pres = FinePolygonWithResidues(FinePolygon(2, 2, ((1, 2), (2, 0))), (one, one))
    s1 = compute_Sm(ctx_q2, Pres, 1)
    assert (s1.C_m, s1.c_m, s1.d_m) == (2, 1, 0)
    assert [s1.map(u) for u in ctx_q2.base.fq.elements()] == [
        u * u for u in ctx_q2.base.fq.elements()
    ]
    s2 = compute_Sm(ctx_q2, Pres, 2)
    assert (s2.C_m, s2.c_m, s2.d_m) == (4, 2, 0)
    assert all(s2.map(u) == u + u * u for u in ctx_q2.base.fq.elements())
    # beyond the steepest slope the map is multiplication by the first residue
    for m in (3, 5, 9):
        sm = compute_Sm(ctx_q2, Pres, m)
        assert sm.C_m == 2 + m
        assert all(sm.map(u) == u for u in ctx_q2.base.fq.elements())


def test_Sm_is_additive_and_C_m_increasing(ctx_q2, ctx_q3):
    for ctx, n_max in ((ctx_q2, 8), (ctx_q3, 9)):
        for n in range(2, n_max + 1):
            for Pres in enumerate_invariants(ctx, n, "res")[0]:
                previous = None
                slots = set()
                for m in range(1, 2 * n + 2):
                    sm = compute_Sm(ctx, Pres, m)
                    if previous is not None:
                        assert sm.C_m > previous
                    previous = sm.C_m
                    slot = (sm.d_m, 1 + sm.c_m)
                    assert slot not in slots
                    slots.add(slot)
                    fq = ctx.base.fq
                    for u in fq.elements():
                        for v in fq.elements():
                            assert sm.map(u + v) == sm.map(u) + sm.map(v)


def test_reduced_template_degree_two_J0_2(ctx_q2):
    one, zero = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    invs, _ = enumerate_invariants(ctx_q2, 2, "unif")
    inv = next(i for i in invs if i.res.polygon.J0 == 2)
    T = truncate_krasner(template_for_invariant(ctx_q2, inv), 2)
    R = reduce_template(ctx_q2, T, inv)
    assert R.slot(0, 2) == {zero}            # m = 1, squaring is surjective
    assert R.slot(0, 3) == {zero, one}       # m = 2, u + u^2 has image {0}
    assert R.slot(1, 3) == {zero}            # m = 3, identity map
    assert R.slot(1, 2) == {zero, one}       # no m reaches this digit
    assert cardinality(R) == 4
    rendered = sorted(render_integer_polynomial(f) for f in expand_template(R))
    assert rendered == ["x^2+10", "x^2+2", "x^2+4x+10", "x^2+4x+2"]


def test_reduced_template_degree_two_J0_1(ctx_q2):
    one, zero = ctx_q2.base.fq.one, ctx_q2.base.fq.zero
    invs, _ = enumerate_invariants(ctx_q2, 2, "unif")
    inv = next(i for i in invs if i.res.polygon.J0 == 1)
    T = truncate_krasner(template_for_invariant(ctx_q2, inv), 1)
    R = reduce_template(ctx_q2, T, inv)
    assert R.slot(1, 2) == {zero}
    assert R.slot(0, 2) == {zero, one}
    assert cardinality(R) == 2
    rendered = sorted(render_integer_polynomial(f) for f in expand_template(R))
    assert rendered == ["x^2+2x+2", "x^2+2x+6"]


def test_reduced_cardinality_divides_unreduced(ctx_q2, ctx_q3):
    for ctx, n in ((ctx_q2, 4), (ctx_q3, 3)):
        for inv in enumerate_invariants(ctx, n, "unif")[0]:
            T = truncate_krasner(template_for_invariant(ctx, inv), inv.res.polygon.J0)
            R = reduce_template(ctx, T, inv)
            assert cardinality(T) % cardinality(R) == 0
            assert cardinality(R) == len(list(expand_template(R)))


def test_reduce_requires_truncation(ctx_q2):
    invs, _ = enumerate_invariants(ctx_q2, 2, "unif")
    T = template_for_invariant(ctx_q2, invs[0])
    with pytest.raises(ValueError):
        reduce_template(ctx_q2, T, invs[0])


def test_template_round_trip_degree_two(ctx_q2):
    for P in enumerate_ram_polygons(ctx_q2, 2)[0]:
        for Ps in enumerate_fine_polygons(ctx_q2, P)[0]:
            T = truncate_krasner(template_for_fine(ctx_q2, Ps), Ps.J0)
            for f in expand_template(T):
                assert fine_of(f) == Ps


def test_tame_reduced_template_is_classical(ctx_q3):
    # degree 2 tame over Q_3: reduction leaves x^2 + (unit) * 3 only
    invs, _ = enumerate_invariants(ctx_q3, 2, "unif")
    for inv in invs:
        T = truncate_krasner(template_for_invariant(ctx_q3, inv), 0)
        R = reduce_template(ctx_q3, T, inv)
        polys = [render_integer_polynomial(f) for f in expand_template(R)]
        assert len(polys) == 1
    all_polys = set()
    for inv in invs:
        T = reduce_template(
            ctx_q3, truncate_krasner(template_for_invariant(ctx_q3, inv), 0), inv
        )
        all_polys.update(render_integer_polynomial(f) for f in expand_template(T))
    assert all_polys == {"x^2+3", "x^2+6"}
