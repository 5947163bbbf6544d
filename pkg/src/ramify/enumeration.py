"""Branch-and-prune enumeration of the invariant hierarchy.

Each enumerator builds candidates incrementally and terminates a branch as
soon as the partial object fails weak validity (or, for residues, as soon
as no uniformizer residue is compatible with the residues assigned so far).
Weak validity is preserved under removing points, so a partial object that
fails it can never be completed to a valid one and the pruning is exact:
with pruning on or off the output set is identical.

Outputs are canonically sorted and deterministic; the degree-level
enumerator optionally fans the top-level branches out over a thread pool,
merging results back in canonical order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from . import validity
from .binomials import BinomialContext, beta, vp, vp_binomial
from .polygons import (
    FinePolygon,
    FinePolygonWithResidues,
    InvariantWithUnif,
    RamPolygon,
    decompose,
)
from .residue_field import orbit_representatives, solve_power_system
from .validity import admissible_phi0


@dataclass
class EnumStats:
    """Search effort counters.

    ``branches_visited`` counts the partial invariants the search expanded,
    i.e. the branches that survive the pruning test (a branch terminated by
    weak validity is never visited).  With pruning disabled every state is
    expanded, so the counter then reflects the raw size of the search tree.
    """

    branches_visited: int = 0
    results: int = 0

    def merge(self, other: "EnumStats") -> None:
        self.branches_visited += other.branches_visited
        self.results += other.results


class Level(Enum):
    RAM = "ram"
    FINE = "fine"
    RES = "res"
    UNIF = "unif"


def _ore_J0_candidates(ctx: BinomialContext, n: int) -> list[int]:
    """All J0 in [0, n*v(n)] satisfying min(n*v(b0), n*v(n)) <= J0."""
    e, p = ctx.base.e, ctx.base.p
    vn = e * vp(p, n)
    out = []
    for J0 in range(n * vn + 1):
        _, b = decompose(J0, n)
        if min(n * e * vp(p, b), n * vn) <= J0:
            out.append(J0)
    return out


def _exp_of(p: int, x: int) -> int:
    s = 0
    while x > 1:
        x //= p
        s += 1
    return s


def _keeps_convex(prefix: list[tuple[int, int]], new: tuple[int, int]) -> bool:
    # the candidate below the current hull can only break convexity on its left
    if len(prefix) < 2:
        return True
    (x1, y1), (x2, y2) = prefix[-2], prefix[-1]
    x3, y3 = new
    return (y2 - y1) * (x3 - x2) < (y3 - y2) * (x2 - x1)


def enumerate_ram_polygons(
    ctx: BinomialContext,
    n: int,
    *,
    prune: bool = True,
    workers: int | None = None,
) -> tuple[list[RamPolygon], EnumStats]:
    """All valid ramification polygons of degree n over the base field.

    Branches first over the leftmost ordinate J0 within the Ore bound, then
    over adding or not adding a vertex at each remaining p-power abscissa;
    candidate ordinates at p^S run over the integers strictly between 0 and
    the current partial polygon's value there (candidates that would make
    an earlier vertex non-extremal are skipped, since the vertex list of a
    polygon must stay strictly convex).
    """
    if n < 1:
        raise ValueError("degree must be positive")
    p = ctx.base.p
    m = vp(p, n)
    p_top = p**m
    tail = [(p_top, 0)] if p_top > 1 else []
    if n > p_top:
        tail.append((n, 0))

    def positions_of(prefix: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
        # wild vertices of the partial polygon: the prefix plus (p^m, 0)
        positions = [(_exp_of(p, x), x, J) for x, J in prefix]
        if p_top > 1:
            positions.append((m, p_top, 0))
        return positions

    def search(
        prefix: list[tuple[int, int]], S: int, out: list[RamPolygon], stats: EnumStats
    ) -> None:
        if prune and not validity.weak_ram_ok(ctx, n, positions_of(prefix)):
            return
        stats.branches_visited += 1
        if S >= m:
            P = RamPolygon(p, n, tuple(prefix + tail))
            if validity.is_valid_ram(ctx, P).ok:
                out.append(P)
            return
        search(prefix, S + 1, out, stats)
        x_new = p**S
        x_last, J_last = prefix[-1]
        # candidates strictly below the chord from the last vertex to (p^m, 0)
        J_max = (J_last * (p_top - x_new) - 1) // (p_top - x_last)
        for J in range(1, J_max + 1):
            if _keeps_convex(prefix, (x_new, J)):
                search(prefix + [(x_new, J)], S + 1, out, stats)

    def run(J0: int) -> tuple[list[RamPolygon], EnumStats]:
        out: list[RamPolygon] = []
        stats = EnumStats()
        search([(1, J0)], 1, out, stats)
        return out, stats

    roots = _ore_J0_candidates(ctx, n)
    results: list[RamPolygon] = []
    total = EnumStats()
    if workers and workers > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for out, stats in pool.map(run, roots):
                results.extend(out)
                total.merge(stats)
    else:
        for J0 in roots:
            out, stats = run(J0)
            results.extend(out)
            total.merge(stats)
    results.sort(key=lambda P: P.vertices)
    total.results = len(results)
    return results, total


def enumerate_fine_polygons(
    ctx: BinomialContext, P: RamPolygon, *, prune: bool = True
) -> tuple[list[FinePolygon], EnumStats]:
    """All valid fine polygons whose hull is the given (valid) polygon.

    The hull vertices and the forced horizontal points are always present;
    the branching is over the non-vertex p-power abscissas where the hull
    passes through a lattice point.
    """
    if not validity.is_valid_ram(ctx, P).ok:
        raise ValueError("fine enumeration requires a valid ramification polygon")
    p, n = P.p, P.n
    m = vp(p, n)
    vertex_xs = {x for x, _ in P.vertices}
    forced = set(P.vertices)
    for j in range(p**m, n + 1):
        if vp_binomial(p, n, j) == 0:
            forced.add((j, 0))
    candidates = []
    for s in range(1, m):
        x = p**s
        if x in vertex_xs:
            continue
        val = P.value_at(x)
        if val.denominator == 1:
            candidates.append((x, int(val)))

    out: list[FinePolygon] = []
    stats = EnumStats()

    def search(idx: int, chosen: list[tuple[int, int]]) -> None:
        Pstar = FinePolygon(p, n, tuple(sorted(forced | set(chosen))))
        if prune and not validity.is_weakly_valid_fine(ctx, Pstar).ok:
            return
        stats.branches_visited += 1
        if idx == len(candidates):
            if validity.is_valid_fine(ctx, Pstar).ok:
                out.append(Pstar)
            return
        search(idx + 1, chosen)
        search(idx + 1, chosen + [candidates[idx]])

    search(0, [])
    out.sort(key=lambda Ps: Ps.points)
    stats.results = len(out)
    return out, stats


def enumerate_residue_classes(
    ctx: BinomialContext, Pstar: FinePolygon, *, prune: bool = True
) -> tuple[list[FinePolygonWithResidues], EnumStats]:
    """One decorated polygon per residue-equivalence class extending ``Pstar``.

    Horizontal points carry forced residues.  The remaining points are
    decorated in order of increasing abscissa, branching only over orbit
    representatives under the twists that fix everything assigned earlier,
    and pruning assignments incompatible with every uniformizer residue.
    """
    if not validity.is_valid_fine(ctx, Pstar).ok:
        raise ValueError("residue enumeration requires a valid fine polygon")
    n = Pstar.n
    field = ctx.base
    forced = [(s, J, beta(ctx, n, x)) for s, x, J in Pstar.wild_points() if J == 0]
    unknowns = [(s, x, J) for s, x, J in Pstar.wild_points() if J > 0]
    unknown_xs = {x for _, x, _ in unknowns}

    out: list[FinePolygonWithResidues] = []
    stats = EnumStats()

    def soluble(assigned: list) -> bool:
        eqs = validity.phi0_equations(ctx, forced + assigned, n)
        return bool(solve_power_system(field, eqs))

    def search(t: int, assigned: list) -> None:
        if prune and not soluble(assigned):
            return
        stats.branches_visited += 1
        if t == len(unknowns):
            if not prune and not soluble(assigned):
                return
            rho_at = {x: rho for (_, x, _), (_, _, rho) in zip(unknowns, assigned)}
            residues = tuple(
                rho_at[x] if x in unknown_xs else beta(ctx, n, x)
                for x, _ in Pstar.points
            )
            out.append(FinePolygonWithResidues(Pstar, residues))
            return
        s_t, _, J_t = unknowns[t]
        constraints = [J for _, _, J in unknowns[:t]]
        for gamma in sorted(orbit_representatives(field, J_t, constraints)):
            search(t + 1, assigned + [(s_t, J_t, gamma)])

    search(0, [])
    out.sort(key=lambda Pres: tuple(rho.coeffs for rho in Pres.residues))
    stats.results = len(out)
    return out, stats


def enumerate_unif_classes(
    ctx: BinomialContext, Pres: FinePolygonWithResidues
) -> tuple[list[InvariantWithUnif], EnumStats]:
    """One representative per equivalence class of admissible phi0 values."""
    stats = EnumStats()
    admissible = sorted(admissible_phi0(ctx, Pres))
    stats.branches_visited = len(admissible)
    reps: list[InvariantWithUnif] = []
    for phi0 in admissible:
        cand = InvariantWithUnif(Pres, phi0)
        if not any(validity.equivalent_with_unif(ctx, rep, cand) for rep in reps):
            reps.append(cand)
    stats.results = len(reps)
    return reps, stats


def enumerate_invariants(
    ctx: BinomialContext,
    n: int,
    level: Level | str,
    *,
    workers: int | None = None,
) -> tuple[list, EnumStats]:
    """The full hierarchy to the requested depth, depth-first, in canonical order."""
    level = Level(level) if not isinstance(level, Level) else level
    total = EnumStats()
    rams, stats = enumerate_ram_polygons(ctx, n, workers=workers)
    total.branches_visited += stats.branches_visited
    if level is Level.RAM:
        total.results = len(rams)
        return rams, total
    results: list = []
    for P in rams:
        fines, stats = enumerate_fine_polygons(ctx, P)
        total.branches_visited += stats.branches_visited
        if level is Level.FINE:
            results.extend(fines)
            continue
        for Pstar in fines:
            decorated, stats = enumerate_residue_classes(ctx, Pstar)
            total.branches_visited += stats.branches_visited
            if level is Level.RES:
                results.extend(decorated)
                continue
            for Pres in decorated:
                refined, stats = enumerate_unif_classes(ctx, Pres)
                total.branches_visited += stats.branches_visited
                results.extend(refined)
    total.results = len(results)
    return results, total
