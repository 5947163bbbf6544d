"""Eisenstein-polynomial templates: build, truncate, reduce, count, expand.

A template assigns to each digit position (i, k) - coefficient index i
below n, pi-power k - a set of allowed residues; the polynomials of the
template are the monic degree-n polynomials whose digit tables pick from
these sets.  Unlisted positions follow the default rule: the full residue
field below the cutoff digit, {0} at and above it.

The construction places {0} at every position forced to vanish by the
digit-depth bounds of a polygon, the unit set F_q^x where a first digit is
forced to be nonzero, and singletons where the residue decoration and the
uniformizer residue pin digits exactly.  Truncation at the Krasner depth
1 + 2*J0/n makes templates finite without changing the set of generated
extensions, and the uniformizer-change reduction shrinks free positions
to coset representatives of the images of the induced additive maps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .analyzer import EisensteinData
from .binomials import BinomialContext, beta, vp
from .polygons import (
    FinePolygon,
    FinePolygonWithResidues,
    InvariantWithUnif,
    RamPolygon,
    decompose,
    ell_P,
    ell_fine,
)
from .residue_field import AdditiveMap, BaseField, FqElement, additive_coset_representatives
from .validity import is_valid_fine, is_valid_ram, is_valid_with_unif


@dataclass(frozen=True)
class Template:
    """A digit-set table describing a finite or cofinite family of polynomials."""

    base: BaseField
    n: int
    slots: dict[tuple[int, int], frozenset[FqElement]]
    cutoff: int | None = None

    def slot(self, i: int, k: int) -> frozenset[FqElement]:
        listed = self.slots.get((i, k))
        if listed is not None:
            return listed
        if self.cutoff is not None and k >= self.cutoff:
            return frozenset({self.base.fq.zero})
        return frozenset(self.base.fq.elements())

    def with_slots(self, updates: dict[tuple[int, int], frozenset[FqElement]]) -> "Template":
        merged = dict(self.slots)
        merged.update(updates)
        return Template(self.base, self.n, merged, self.cutoff)


def eisenstein_template(ctx: BinomialContext, n: int) -> Template:
    """The template of all Eisenstein polynomials of degree n.

    Digits at pi-power 0 vanish, the first digit of the constant
    coefficient is a unit, and everything else is unconstrained.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    fq = ctx.base.fq
    slots: dict[tuple[int, int], frozenset[FqElement]] = {
        (i, 0): frozenset({fq.zero}) for i in range(n)
    }
    slots[(0, 1)] = frozenset(fq.units())
    return Template(ctx.base, n, slots, None)


def _apply_depth_bounds(ctx, template, n, ell, positions) -> Template:
    """Zero out digits below the bound and pin the forced first digits.

    ``ell(i, s)`` is the depth bound; ``positions`` lists (s_t, p^(s_t), J_t)
    for the attained p-power points, whose remainders b_t < n force the
    digit at exactly that depth to be a unit.
    """
    p = ctx.base.p
    fq = ctx.base.fq
    zero_set = frozenset({fq.zero})
    lower = {}
    for s in range(vp(p, n) + 1):
        for i in range(p**s, n):
            bound = ell(i, s)
            if bound > lower.get(i, 1):
                lower[i] = bound
    updates: dict[tuple[int, int], frozenset[FqElement]] = {}
    for i, bound in lower.items():
        for k in range(1, bound):
            updates[(i, k)] = zero_set
    for s_t, x_t, J_t in positions:
        a_t, b_t = decompose(J_t, n)
        if b_t < n:
            depth = ell(b_t, s_t)
            assert depth == lower.get(b_t, depth), "pinned digit clashes with a zero"
            updates[(b_t, depth)] = frozenset(fq.units())
    return template.with_slots(updates)


def template_for_polygon(ctx: BinomialContext, P: RamPolygon) -> Template:
    """The template of exactly the Eisenstein polynomials with polygon ``P``."""
    if not is_valid_ram(ctx, P).ok:
        raise ValueError("template requires a valid polygon")
    ell = lambda i, s: ell_P(ctx, P, i, s)
    return _apply_depth_bounds(ctx, eisenstein_template(ctx, P.n), P.n, ell, P.wild_vertices())


def template_for_fine(ctx: BinomialContext, Pstar: FinePolygon) -> Template:
    """The template of exactly the polynomials with fine polygon ``Pstar``."""
    if not is_valid_fine(ctx, Pstar).ok:
        raise ValueError("template requires a valid fine polygon")
    ell = lambda i, s: ell_fine(ctx, Pstar, i, s)
    return _apply_depth_bounds(
        ctx, eisenstein_template(ctx, Pstar.n), Pstar.n, ell, Pstar.wild_points()
    )


def template_for_invariant(ctx: BinomialContext, inv: InvariantWithUnif) -> Template:
    """The fine template with the uniformizer-residue pinnings applied.

    The first digit of the constant coefficient becomes {phi0}, and at each
    attained point with remainder b < n the forced unit digit collapses to
    the single value gamma_t * beta(b, p^s)^-1 * (-phi0)^(a+1).
    """
    if not is_valid_with_unif(ctx, inv).ok:
        raise ValueError("template requires a valid uniformizer-refined invariant")
    Pres = inv.res
    Pstar = Pres.polygon
    n = Pstar.n
    template = template_for_fine(ctx, Pstar)
    minus_phi0 = -inv.phi0
    updates = {(0, 1): frozenset({inv.phi0})}
    for s_t, x_t, J_t in Pstar.wild_points():
        a_t, b_t = decompose(J_t, n)
        if b_t < n:
            gamma_t = Pres.residue_at(x_t)
            pinned = gamma_t / beta(ctx, b_t, x_t) * minus_phi0 ** (a_t + 1)
            depth = ell_fine(ctx, Pstar, b_t, s_t)
            previous = updates.get((b_t, depth))
            assert previous is None or previous == frozenset({pinned})
            updates[(b_t, depth)] = frozenset({pinned})
    return template.with_slots(updates)


def truncate_krasner(T: Template, J0: int) -> Template:
    """Zero all digits at depth strictly beyond 1 + 2*J0/n.

    Any two Eisenstein polynomials agreeing below that depth generate the
    same extension, so this keeps the set of generated extensions intact
    while making the template finite.
    """
    bound = 1 + Fraction(2 * J0, T.n)
    cutoff = math.floor(bound) + 1
    zero = frozenset({T.base.fq.zero})
    full = frozenset(T.base.fq.elements())
    slots = {}
    for (i, k), value in T.slots.items():
        if k >= cutoff:
            assert value in (zero, full), "cutoff would clobber a forced digit"
        else:
            slots[(i, k)] = value
    return Template(T.base, T.n, slots, cutoff)


# ---------------------------------------------------------------------------
# uniformizer-change reduction


@dataclass(frozen=True)
class SmData:
    """The additive map induced on digit (d_m, 1 + c_m) by u -> alpha(1 + u alpha^m).

    C_m is the minimum of R_j + m*j over the points of the fine polygon,
    decomposed as C_m = c_m * n + d_m with 0 <= d_m < n; the map is
    u -> sum of rho_j * u^j over the minimising points, all of which sit at
    powers of p, making the map F_p-linear.
    """

    m: int
    C_m: int
    c_m: int
    d_m: int
    map: AdditiveMap


def compute_Sm(ctx: BinomialContext, Pres: FinePolygonWithResidues, m: int) -> SmData:
    if m < 1:
        raise ValueError("m must be positive")
    p = ctx.base.p
    n = Pres.polygon.n
    C = min(J + m * x for x, J in Pres.polygon.points)
    minimisers = [(x, rho) for x, J, rho in Pres.items() if J + m * x == C]
    for x, _ in minimisers:
        x_red = x
        while x_red % p == 0:
            x_red //= p
        if x_red != 1:
            raise AssertionError("minimiser at a non-p-power abscissa")
    fq = ctx.base.fq

    def act(u: FqElement) -> FqElement:
        out = fq.zero
        for x, rho in minimisers:
            out = out + rho * u**x
        return out

    c_m, d_m = divmod(C, n)
    return SmData(m=m, C_m=C, c_m=c_m, d_m=d_m, map=AdditiveMap.from_function(fq, act))


def reduce_template(ctx: BinomialContext, T: Template, inv: InvariantWithUnif) -> Template:
    """Shrink free digits to coset representatives under uniformizer changes.

    For each m >= 1 whose digit position (d_m, 1 + c_m) lies below the
    cutoff, a change of uniformizer moves that digit through the subgroup
    (-phi0)^(1+c_m) * S_m(F_q), so a full set there may be replaced by coset
    representatives.  Positions already constrained (zeroed, forced units,
    or pinned singletons) are left untouched.  Distinct m reach distinct
    positions because C_m strictly increases.
    """
    if T.cutoff is None:
        raise ValueError("reduction requires a truncated template")
    full = frozenset(T.base.fq.elements())
    minus_phi0 = -inv.phi0
    updates = {}
    m = 1
    while True:
        sm = compute_Sm(ctx, inv.res, m)
        k = 1 + sm.c_m
        if k >= T.cutoff:
            break
        position = (sm.d_m, k)
        if T.slot(*position) == full:
            scale = minus_phi0 ** (1 + sm.c_m)
            reps = additive_coset_representatives(ctx.base, sm.map, scale)
            updates[position] = frozenset(reps)
        m += 1
    return T.with_slots(updates)


# ---------------------------------------------------------------------------
# counting and expansion


def _positions(T: Template) -> list[tuple[int, int]]:
    if T.cutoff is None:
        raise ValueError("template is not finite (no cutoff)")
    return [(i, k) for i in range(T.n) for k in range(T.cutoff)]


def cardinality(T: Template) -> int:
    """Number of polynomials the template describes."""
    count = 1
    for i, k in _positions(T):
        count *= len(T.slot(i, k))
    return count


def expand_template(T: Template):
    """Stream every polynomial of the template as a digit table.

    Positions are enumerated in (i, k) order with element choices in
    canonical order, so the stream is deterministic.
    """
    positions = _positions(T)
    choice_sets = [sorted(T.slot(i, k)) for i, k in positions]
    zero = T.base.fq.zero
    for combo in itertools.product(*choice_sets):
        rows = [[zero] * (T.cutoff - 1) for _ in range(T.n)]
        for (i, k), value in zip(positions, combo):
            if k >= 1:
                rows[i][k - 1] = value
        yield EisensteinData(T.base, T.n, tuple(tuple(row) for row in rows))
