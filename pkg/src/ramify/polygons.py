"""Polygon invariants of Eisenstein polynomials, as exact integer geometry.

A ramification polygon of degree n is the lower convex hull of the points
(j, R_j), R_j = n * v(r_j), of the associated ramification polynomial; we
store polygons by their vertex lists.  A fine polygon additionally keeps
every lattice point of the hull that is actually attained, and may carry
a nonzero residue per point.  Ordinates are integers; all intermediate
polygon values are exact rationals.

Conventions used throughout:

* the ordinate J of a point decomposes as J = a*n + b with 1 <= b <= n
  (so J = 0 gives a = -1, b = n); see :func:`decompose`;
* points at abscissa p^s with s <= v_p(n) are the "wild" positions that
  the validity conditions quantify over;
* points (j, 0) with j beyond the last wild abscissa are "tame" and are
  stored explicitly (serialisations flag them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .binomials import B, BinomialContext, vp
from .residue_field import FqElement


def lower_convex_hull(
    points: Iterable[tuple[int, int | Fraction]],
) -> list[tuple[int, int | Fraction]]:
    """Vertices of the lower convex hull, left to right.

    Collinear interior points are not vertices and are dropped.  Duplicate
    abscissas are rejected.
    """
    pts = sorted(points)
    for (x1, _), (x2, _) in zip(pts, pts[1:]):
        if x1 == x2:
            raise ValueError(f"duplicate abscissa {x1}")
    hull: list[tuple[int, int | Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep (x2, y2) only if the turn through it is strictly convex
            if (x2 - x1) * (pt[1] - y1) - (pt[0] - x1) * (y2 - y1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def decompose(J: int, n: int) -> tuple[int, int]:
    """The unique (a, b) with J = a*n + b and 1 <= b <= n."""
    if J < 0:
        raise ValueError("J must be nonnegative")
    b = (J - 1) % n + 1
    return (J - b) // n, b


def _piecewise_value(vertices: Sequence[tuple[int, int]], j: int) -> Fraction:
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:]):
        if x1 <= j <= x2:
            return Fraction(y1 * (x2 - j) + y2 * (j - x1), x2 - x1)
    if j == vertices[0][0]:
        return Fraction(vertices[0][1])
    raise ValueError(f"abscissa {j} outside polygon range")


@dataclass(frozen=True)
class RamPolygon:
    """A (potential) ramification polygon, stored by its vertices.

    Structural requirements checked at construction: the first vertex is
    at abscissa 1, there is a vertex (p^(v_p(n)), 0), the last vertex is
    (n, 0), every other vertex sits at a power of p, and slopes strictly
    increase left to right.
    """

    p: int
    n: int
    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "vertices", tuple((int(x), int(J)) for x, J in self.vertices)
        )
        vs = self.vertices
        if self.n < 1 or not vs:
            raise ValueError("empty polygon")
        xs = [x for x, _ in vs]
        if xs != sorted(set(xs)):
            raise ValueError("vertex abscissas must strictly increase")
        if vs[0][0] != 1:
            raise ValueError("polygon must start at abscissa 1")
        if vs[-1] != (self.n, 0):
            raise ValueError(f"polygon must end at ({self.n}, 0)")
        if any(J < 0 for _, J in vs):
            raise ValueError("ordinates must be nonnegative")
        wild_top = self.p ** vp(self.p, self.n)
        if (wild_top, 0) not in vs:
            raise ValueError(f"missing mandatory vertex ({wild_top}, 0)")
        for x, _ in vs[:-1]:
            if x > wild_top or not _is_power_of(self.p, x):
                raise ValueError(f"interior vertex abscissa {x} is not a p-power")
        for (x1, y1), (x2, y2), (x3, y3) in zip(vs, vs[1:], vs[2:]):
            if (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1) <= 0:
                raise ValueError("vertices must be strictly convex")

    @property
    def J0(self) -> int:
        return self.vertices[0][1]

    def value_at(self, j: int) -> Fraction:
        if not 1 <= j <= self.n:
            raise ValueError(f"abscissa {j} outside [1, {self.n}]")
        return _piecewise_value(self.vertices, j)

    def wild_vertices(self) -> list[tuple[int, int, int]]:
        """(s, p^s, J) for each vertex at a p-power abscissa <= p^(v_p(n))."""
        top = self.p ** vp(self.p, self.n)
        return [
            (_log_p(self.p, x), x, J) for x, J in self.vertices if x <= top
        ]


def _is_power_of(p: int, x: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def _log_p(p: int, x: int) -> int:
    s = 0
    while x > 1:
        x //= p
        s += 1
    return s


def eval_polygon(P: RamPolygon, j: int) -> Fraction:
    """Exact value of the piecewise-linear polygon function at j in [1, n]."""
    return P.value_at(j)


@dataclass(frozen=True)
class FinePolygon:
    """All attained lattice points of a ramification polygon.

    Every point lies on the lower convex hull of the point set, which is
    itself a structurally valid :class:`RamPolygon` (available as ``hull``).
    """

    p: int
    n: int
    points: tuple[tuple[int, int], ...]
    hull: RamPolygon = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "points", tuple(sorted((int(x), int(J)) for x, J in self.points))
        )
        pts = self.points
        hull_pts = lower_convex_hull(pts)
        vertices = []
        for x, y in hull_pts:
            frac = Fraction(y)
            if frac.denominator != 1:
                raise ValueError("hull ordinates must be integers")
            vertices.append((x, int(frac)))
        hull = RamPolygon(self.p, self.n, tuple(vertices))
        object.__setattr__(self, "hull", hull)
        wild_top = self.p ** vp(self.p, self.n)
        for x, J in pts:
            if x <= wild_top and not _is_power_of(self.p, x):
                raise ValueError(f"point abscissa {x} below {wild_top} must be a p-power")
            if hull.value_at(x) != J:
                raise ValueError(f"point ({x}, {J}) is not on the hull")

    @property
    def J0(self) -> int:
        return self.points[0][1]

    def ordinate_at(self, x: int) -> int | None:
        for px, J in self.points:
            if px == x:
                return J
        return None

    def wild_points(self) -> list[tuple[int, int, int]]:
        """(s, p^s, J) for each point at a p-power abscissa <= p^(v_p(n))."""
        top = self.p ** vp(self.p, self.n)
        return [(_log_p(self.p, x), x, J) for x, J in self.points if x <= top]

    def tame_abscissas(self) -> list[int]:
        """Abscissas of the stored points on the horizontal face beyond p^(v_p(n))."""
        top = self.p ** vp(self.p, self.n)
        return [x for x, J in self.points if J == 0 and x > top]


@dataclass(frozen=True)
class FinePolygonWithResidues:
    """A fine polygon with one nonzero residue attached to each point."""

    polygon: FinePolygon
    residues: tuple[FqElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues", tuple(self.residues))
        if len(self.residues) != len(self.polygon.points):
            raise ValueError("need exactly one residue per point")
        if not all(self.residues):
            raise ValueError("residues must be nonzero")
        # the point (n, 0) always carries residue 1
        last = self.residues[-1]
        if last != last.field.one:
            raise ValueError("residue at (n, 0) must be 1")

    def items(self) -> Iterator[tuple[int, int, FqElement]]:
        for (x, J), rho in zip(self.polygon.points, self.residues):
            yield x, J, rho

    def residue_at(self, x: int) -> FqElement:
        for px, rho in zip((pt[0] for pt in self.polygon.points), self.residues):
            if px == x:
                return rho
        raise KeyError(x)


@dataclass(frozen=True)
class InvariantWithUnif:
    """A residue-decorated fine polygon refined by the uniformizer residue.

    ``phi0`` is the first pi-adic digit of the constant coefficient of any
    Eisenstein polynomial realising the invariant; -phi0 is the uniformizer
    residue of the root.
    """

    res: FinePolygonWithResidues
    phi0: FqElement

    def __post_init__(self) -> None:
        if not self.phi0:
            raise ValueError("phi0 must be nonzero")


class Rel(Enum):
    EQ = "="
    GE = ">="
    GT = ">"


@dataclass(frozen=True)
class PointSpec:
    """Generalized point record: the ordinate R_x is constrained by ``rel``.

    This is the interchange form covering plain and fine polygons at once:
    EQ marks an attained point, GT an excluded one, GE leaves it open.  A
    residue may only decorate an attained point.
    """

    x: int
    J: int
    rel: Rel
    rho: FqElement | None = None

    def __post_init__(self) -> None:
        if self.x < 1 or self.J < 0:
            raise ValueError("bad point coordinates")
        if self.rho is not None:
            if self.rel is not Rel.EQ:
                raise ValueError("residues require an attained (EQ) point")
            if not self.rho:
                raise ValueError("residues must be nonzero")


def ram_point_specs(P: RamPolygon) -> tuple[PointSpec, ...]:
    """One record per p-power abscissa (vertices EQ, the rest GE), plus (n, 0)."""
    specs = []
    xs = dict(P.vertices)
    top_s = vp(P.p, P.n)
    for s in range(top_s + 1):
        x = P.p**s
        if x in xs:
            specs.append(PointSpec(x, xs[x], Rel.EQ))
        else:
            specs.append(PointSpec(x, math.ceil(P.value_at(x)), Rel.GE))
    if P.n != P.p**top_s:
        specs.append(PointSpec(P.n, 0, Rel.EQ))
    return tuple(specs)


def fine_point_specs(
    Pstar: FinePolygon, residues: Sequence[FqElement] | None = None
) -> tuple[PointSpec, ...]:
    """Records for every p-power position (EQ or GT) and every tame point."""
    rho_at: dict[int, FqElement] = {}
    if residues is not None:
        rho_at = {x: rho for (x, _), rho in zip(Pstar.points, residues)}
    specs = []
    top_s = vp(Pstar.p, Pstar.n)
    for s in range(top_s + 1):
        x = Pstar.p**s
        J = Pstar.ordinate_at(x)
        if J is not None:
            specs.append(PointSpec(x, J, Rel.EQ, rho_at.get(x)))
        else:
            specs.append(PointSpec(x, math.floor(Pstar.hull.value_at(x)), Rel.GT))
    for x, J in Pstar.points:
        if x > Pstar.p**top_s:
            specs.append(PointSpec(x, J, Rel.EQ, rho_at.get(x)))
    return tuple(specs)


# ---------------------------------------------------------------------------
# the digit-depth bound functions


def ell_P(ctx: BinomialContext, P: RamPolygon, i: int, s: int) -> int:
    """ceil((P(p^s) - i) / n) - B(i, p^s) + 1, for p^s <= i <= n."""
    x = ctx.base.p**s
    if not x <= i <= P.n:
        raise ValueError(f"need p^s <= i <= n, got p^s={x}, i={i}")
    return math.ceil(Fraction(P.value_at(x) - i, P.n)) - B(ctx, i, x) + 1


def ell_fine(ctx: BinomialContext, Pstar: FinePolygon, i: int, s: int) -> int:
    """Digit-depth bound at (i, s) relative to a fine polygon.

    Where (p^s, J) is an attained point with J = a*n + b this is
    a - B(i, p^s) + 1 + [i < b]; where p^s carries no point the bound
    encodes strict exclusion: floor((P(p^s) - i) / n) - B(i, p^s) + 2.
    """
    x = ctx.base.p**s
    if not x <= i <= Pstar.n:
        raise ValueError(f"need p^s <= i <= n, got p^s={x}, i={i}")
    J = Pstar.ordinate_at(x)
    if J is not None:
        a, b = decompose(J, Pstar.n)
        return a - B(ctx, i, x) + 1 + (1 if i < b else 0)
    hull_val = Pstar.hull.value_at(x)
    return math.floor(Fraction(hull_val - i, Pstar.n)) - B(ctx, i, x) + 2


# ---------------------------------------------------------------------------
# residual polynomials


@dataclass(frozen=True)
class ResidualPolynomial:
    """The monic residue-field polynomial attached to one face of the hull.

    The face runs from abscissa ``x_left`` to ``x_right`` with slope -h/e
    in lowest terms and width w = x_right - x_left; the coefficient at
    index (j - x_left)/e is the residue at j divided by the residue at the
    right endpoint, and 0 where no point is attained.
    """

    x_left: int
    x_right: int
    h: int
    e: int
    w: int
    coefficients: tuple[FqElement, ...]


def residual_polynomials(
    ctx: BinomialContext, Pres: FinePolygonWithResidues
) -> tuple[ResidualPolynomial, ...]:
    """One residual polynomial per face of the hull, left to right."""
    poly = Pres.polygon
    out = []
    for (x1, y1), (x2, y2) in zip(poly.hull.vertices, poly.hull.vertices[1:]):
        w = x2 - x1
        rise = y1 - y2
        g = math.gcd(rise, w)
        h, e = (rise // g, w // g) if rise else (0, 1)
        lead = Pres.residue_at(x2)
        zero = lead.field.zero
        coeffs = [zero] * (w // e + 1)
        for x, J, rho in Pres.items():
            if x1 <= x <= x2:
                assert (x - x1) % e == 0
                coeffs[(x - x1) // e] = rho / lead
        out.append(
            ResidualPolynomial(
                x_left=x1, x_right=x2, h=h, e=e, w=w, coefficients=tuple(coeffs)
            )
        )
    return tuple(out)
