"""Validity, weak validity and equivalence at every level of the hierarchy.

A polygon is valid when it is realised by some Eisenstein polynomial over
the base field.  Realisability reduces to a finite family of conditions on
the digit-depth bounds: the three Ore conditions, Consistency of repeated
remainders, and the Bounding inequalities, together with the constraint
p^s <= b at each point and (for fine polygons) the Tame biconditional
saying that a point (j, 0) on the horizontal face is attained exactly when
binomial(n, j) is a unit.

Weak validity quantifies the same conditions only over the exponents of
positions actually present; it is preserved when points are removed, which
is what makes branch-and-prune enumeration sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from .binomials import BinomialContext, beta, vp, vp_binomial
from .polygons import (
    FinePolygon,
    FinePolygonWithResidues,
    InvariantWithUnif,
    RamPolygon,
    decompose,
    ell_P,
    ell_fine,
)
from .residue_field import FqElement, solve_power_system


class Violation(Enum):
    BRANGE = "BRange"
    ORE1 = "Ore1"
    ORE2 = "Ore2"
    ORE3 = "Ore3"
    CONSISTENCY = "Consistency"
    BOUNDING = "Bounding"
    TAME = "Tame"
    RESIDUE_FORCED = "ResidueForced"
    RESIDUE_SYSTEM = "ResidueSystem"


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple[Violation, ...]

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> "ValidityReport":
        seen: list[Violation] = []
        for v in violations:
            if v not in seen:
                seen.append(v)
        return cls(ok=not seen, violations=tuple(seen))


class ResidueForcedError(ValueError):
    """A horizontal-face residue differs from the forced binomial residue."""


def _condition_violations(
    ctx: BinomialContext,
    n: int,
    positions: Sequence[tuple[int, int, int]],
    ell: Callable[[int, int], int],
    s_values: Sequence[int],
) -> list[Violation]:
    """Shared Ore / Consistency / Bounding engine.

    ``positions`` lists (s_t, p^(s_t), J_t) for the p-power points present;
    ``ell`` is the digit-depth bound; ``s_values`` is the exponent range the
    universally quantified conditions run over (all of 0..v_p(n) for full
    validity, the present exponents only for weak validity).
    """
    out: list[Violation] = []
    p = ctx.base.p
    decomposed = [(s, x, *decompose(J, n)) for s, x, J in positions]
    for s_t, x_t, a_t, b_t in decomposed:
        if x_t > b_t:
            out.append(Violation.BRANGE)
        if b_t == n:
            if ell(n, s_t) != 0:
                out.append(Violation.ORE1)
        else:
            if x_t <= b_t and ell(b_t, s_t) < 1:
                out.append(Violation.ORE3)
    for s in s_values:
        if ell(n, s) > 0:
            out.append(Violation.ORE2)
    by_b: dict[int, set[int]] = {}
    for s_t, x_t, a_t, b_t in decomposed:
        if b_t < n and x_t <= b_t:
            by_b.setdefault(b_t, set()).add(ell(b_t, s_t))
            for s in s_values:
                if p**s <= b_t and ell(b_t, s_t) < ell(b_t, s):
                    out.append(Violation.BOUNDING)
                    break
    for b, values in by_b.items():
        if len(values) > 1:
            out.append(Violation.CONSISTENCY)
    return out


def _position_ell(ctx: BinomialContext, n: int, positions) -> Callable[[int, int], int]:
    """Digit-depth bound restricted to present exponents, by integer arithmetic.

    At an attained position with ordinate J = a*n + b the bound is
    a + ceil((b - i)/n) - B(i, p^s) + 1, which needs no hull evaluation;
    weak validity only ever consults these exponents, so this avoids all
    rational arithmetic in the enumeration hot path.
    """
    e, p = ctx.base.e, ctx.base.p
    info = {s: decompose(J, n) for s, _, J in positions}

    def ell(i: int, s: int) -> int:
        a, b = info[s]
        return a - ((i - b) // n) - e * vp_binomial(p, i, p**s) + 1

    return ell


def weak_ram_ok(ctx: BinomialContext, n: int, positions) -> bool:
    """Weak validity from raw (s, p^s, J) vertex data, cheaply.

    Equivalent to ``is_weakly_valid_ram`` on the polygon with these wild
    vertices; used by the enumerator, which keeps partial polygons as plain
    vertex lists.
    """
    s_values = [s for s, _, _ in positions]
    ell = _position_ell(ctx, n, positions)
    return not _condition_violations(ctx, n, positions, ell, s_values)


def _ram_positions(P: RamPolygon) -> list[tuple[int, int, int]]:
    return P.wild_vertices()


def is_valid_ram(ctx: BinomialContext, P: RamPolygon) -> ValidityReport:
    """Full validity of a ramification polygon over the base field."""
    s_values = range(vp(ctx.base.p, P.n) + 1)
    ell = lambda i, s: ell_P(ctx, P, i, s)
    return ValidityReport.from_violations(
        _condition_violations(ctx, P.n, _ram_positions(P), ell, list(s_values))
    )


def is_weakly_valid_ram(ctx: BinomialContext, P: RamPolygon) -> ValidityReport:
    """Validity conditions quantified only over the present vertex exponents."""
    positions = _ram_positions(P)
    s_values = sorted({s for s, _, _ in positions})
    ell = _position_ell(ctx, P.n, positions)
    return ValidityReport.from_violations(
        _condition_violations(ctx, P.n, positions, ell, s_values)
    )


def _tame_violations(ctx: BinomialContext, Pstar: FinePolygon) -> list[Violation]:
    p, n = ctx.base.p, Pstar.n
    top = p ** vp(p, n)
    for j in range(top, n + 1):
        attained = Pstar.ordinate_at(j) == 0
        if (vp_binomial(p, n, j) == 0) != attained:
            return [Violation.TAME]
    return []


def is_valid_fine(ctx: BinomialContext, Pstar: FinePolygon) -> ValidityReport:
    """Full validity of a fine polygon: tame biconditional plus the Ore family."""
    s_values = range(vp(ctx.base.p, Pstar.n) + 1)
    ell = lambda i, s: ell_fine(ctx, Pstar, i, s)
    violations = _tame_violations(ctx, Pstar)
    violations += _condition_violations(
        ctx, Pstar.n, Pstar.wild_points(), ell, list(s_values)
    )
    return ValidityReport.from_violations(violations)


def is_weakly_valid_fine(ctx: BinomialContext, Pstar: FinePolygon) -> ValidityReport:
    positions = Pstar.wild_points()
    s_values = sorted({s for s, _, _ in positions})
    # at attained positions the fine bound coincides with the position bound
    ell = _position_ell(ctx, Pstar.n, positions)
    violations = _tame_violations(ctx, Pstar)
    violations += _condition_violations(ctx, Pstar.n, positions, ell, s_values)
    return ValidityReport.from_violations(violations)


# ---------------------------------------------------------------------------
# residue solubility


def forced_residue_violations(
    ctx: BinomialContext, Pres: FinePolygonWithResidues
) -> list[tuple[int, FqElement, FqElement]]:
    """Mismatches (x, expected, got) at horizontal-face points.

    Every point (j, 0) must carry the residue of binomial(n, j), which is a
    unit there by the tame condition.
    """
    n = Pres.polygon.n
    bad = []
    for x, J, rho in Pres.items():
        if J == 0:
            expected = beta(ctx, n, x)
            if rho != expected:
                bad.append((x, expected, rho))
    return bad


def phi0_equations(
    ctx: BinomialContext, points: Iterable[tuple[int, int, FqElement]], n: int
) -> list[tuple[int, FqElement]]:
    """The power system satisfied by x = -phi0, from the decorated p-power points.

    A point with remainder b = n pins x directly; points sharing a remainder
    b < n constrain x through the ratio of their residues.
    """
    eqs: list[tuple[int, FqElement]] = []
    groups: dict[int, list[tuple[int, int, FqElement]]] = {}
    for s_t, J_t, gamma_t in points:
        a_t, b_t = decompose(J_t, n)
        x_t = ctx.base.p**s_t
        if b_t == n:
            eqs.append((a_t + 1, beta(ctx, n, x_t) / gamma_t))
        else:
            groups.setdefault(b_t, []).append((s_t, a_t, gamma_t))
    for b, group in groups.items():
        s_0, a_0, gamma_0 = group[0]
        beta_0 = beta(ctx, b, ctx.base.p**s_0)
        for s_r, a_r, gamma_r in group[1:]:
            beta_r = beta(ctx, b, ctx.base.p**s_r)
            eqs.append((a_r - a_0, (gamma_0 * beta_r) / (gamma_r * beta_0)))
    return eqs


def admissible_phi0(
    ctx: BinomialContext, Pres: FinePolygonWithResidues
) -> set[FqElement]:
    """All phi0 in F_q^x for which some Eisenstein polynomial realises ``Pres``.

    Raises :class:`ResidueForcedError` when a horizontal-face residue is not
    the forced binomial residue; otherwise translates the solubility
    conditions into a power system in -phi0 and solves it.
    """
    mismatches = forced_residue_violations(ctx, Pres)
    if mismatches:
        raise ResidueForcedError(
            "forced residues violated at " + ", ".join(str(x) for x, _, _ in mismatches)
        )
    n = Pres.polygon.n
    points = [
        (s, J, Pres.residue_at(x)) for s, x, J in Pres.polygon.wild_points()
    ]
    solutions = solve_power_system(ctx.base, phi0_equations(ctx, points, n))
    return {-x for x in solutions}


def is_valid_with_unif(ctx: BinomialContext, inv: InvariantWithUnif) -> ValidityReport:
    try:
        admissible = admissible_phi0(ctx, inv.res)
    except ResidueForcedError:
        return ValidityReport.from_violations([Violation.RESIDUE_FORCED])
    if inv.phi0 in admissible:
        return ValidityReport.from_violations([])
    return ValidityReport.from_violations([Violation.RESIDUE_SYSTEM])


# ---------------------------------------------------------------------------
# equivalence


def equivalent_res(
    ctx: BinomialContext, A: FinePolygonWithResidues, B_: FinePolygonWithResidues
) -> bool:
    """Whether a unit twist delta maps the residues of A onto those of B_.

    The twist acts by rho_j -> rho_j * delta^(-R_j), so the two decorations
    are equivalent iff the system delta^(R_j) = rho_j / rho'_j is soluble.
    """
    if A.polygon != B_.polygon:
        return False
    eqs = [
        (J, rho_a / rho_b)
        for (x, J, rho_a), (_, _, rho_b) in zip(A.items(), B_.items())
    ]
    return bool(solve_power_system(ctx.base, eqs))


def invariant_gcd(Pres: FinePolygonWithResidues) -> int:
    """gcd of all point ordinates; 0 when the polygon is entirely horizontal."""
    g = 0
    for _, J in Pres.polygon.points:
        g = math.gcd(g, J)
    return g


def equivalent_with_unif(
    ctx: BinomialContext, A: InvariantWithUnif, B_: InvariantWithUnif
) -> bool:
    """Equivalence of uniformizer-refined invariants.

    With identical decorated polygons the only freedom left is a twist delta
    with delta^g = 1 (g the gcd of the ordinates) moving phi0 by delta^n.
    """
    if A.res != B_.res:
        return False
    g = invariant_gcd(A.res)
    n = A.res.polygon.n
    eqs = [(g, ctx.base.fq.one), (n, B_.phi0 / A.phi0)]
    return bool(solve_power_system(ctx.base, eqs))
