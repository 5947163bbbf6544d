"""Forward analysis: from an explicit Eisenstein polynomial to its invariants.

Polynomials are held as finite tables of pi-adic digits of their
coefficients, never as approximate p-adic numbers.  Writing
F_i = v(f_i) (the index of the first nonzero digit) and phi_i for that
digit, the invariants are exact functions of the pairs (F_i, phi_i):

    R_j = min over i in [j, n] of n*(B(i,j) + F_i - 1) + i,

terms with f_i = 0 omitted (the monic leading term, with F_n = 0, is
always present, so every R_j is finite).  The fine polygon collects the
(j, R_j) on the lower hull, and the residue at such a point with
R_j = a*n + b is beta(b, j) * phi_b * (-phi0)^-(1+a), phi0 being the
first digit of the constant coefficient.

This module is also the test oracle: :func:`brute_force_survey` iterates
every digit table up to a depth bound and groups the results by fine
polygon, against which the enumerators and templates are checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .binomials import B, BinomialContext, beta, vp
from .polygons import (
    FinePolygon,
    FinePolygonWithResidues,
    InvariantWithUnif,
    RamPolygon,
    decompose,
    lower_convex_hull,
)
from .residue_field import BaseField, FqElement

SURVEY_GUARD = 2**24

# depth of the digit expansion used for integer coefficient input; the
# invariants depend only on each coefficient's leading digit, deeper digits
# are kept so the table remains a faithful approximation of the input
INTEGER_DIGIT_DEPTH = 8


class NotEisensteinError(ValueError):
    """Input polynomial is not Eisenstein over the base field."""


@dataclass(frozen=True, slots=True)
class EisensteinData:
    """A monic Eisenstein polynomial as a digit table.

    ``digits[i][k-1]`` is the residue digit of coefficient i at pi-power k
    (the k = 0 digit of every coefficient is 0 by Eisenstein integrality,
    and the leading coefficient is implicitly 1).  Each per-coefficient
    tuple is stored with trailing zeros trimmed, so tables compare equal
    exactly when they define the same polynomial.
    """

    base: BaseField
    n: int
    digits: tuple[tuple[FqElement, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1 or len(self.digits) != self.n:
            raise NotEisensteinError("need one digit vector per coefficient below n")
        object.__setattr__(
            self, "digits", tuple(_trim(vec) for vec in self.digits)
        )
        if not self.digits[0] or not self.digits[0][0]:
            raise NotEisensteinError("constant coefficient must have valuation 1")

    @classmethod
    def from_digit_map(
        cls, base: BaseField, n: int, table: Mapping[tuple[int, int], FqElement]
    ) -> "EisensteinData":
        depth = max((k for (_, k) in table), default=1)
        rows = [[base.fq.zero] * depth for _ in range(n)]
        for (i, k), value in table.items():
            if not 0 <= i < n:
                raise NotEisensteinError(f"coefficient index {i} out of range")
            if k < 1:
                if value:
                    raise NotEisensteinError("digits at pi-power 0 must vanish")
                continue
            rows[i][k - 1] = value
        return cls(base, n, tuple(tuple(row) for row in rows))

    def digit(self, i: int, k: int) -> FqElement:
        if i == self.n:
            return self.base.fq.one if k == 0 else self.base.fq.zero
        row = self.digits[i]
        if 1 <= k <= len(row):
            return row[k - 1]
        return self.base.fq.zero

    def F(self, i: int) -> int | None:
        """Valuation of coefficient i; None when the coefficient is zero."""
        if i == self.n:
            return 0
        for k, d in enumerate(self.digits[i], start=1):
            if d:
                return k
        return None

    def phi(self, i: int) -> FqElement:
        """Leading digit of coefficient i (1 for the monic leading term)."""
        if i == self.n:
            return self.base.fq.one
        F = self.F(i)
        if F is None:
            raise ValueError(f"coefficient {i} is zero")
        return self.digits[i][F - 1]

    def nonzero_digits(self) -> Iterable[tuple[int, int, FqElement]]:
        for i, row in enumerate(self.digits):
            for k, d in enumerate(row, start=1):
                if d:
                    yield i, k, d


def _trim(vec: Iterable[FqElement]) -> tuple[FqElement, ...]:
    out = list(vec)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# invariants of a polynomial


def ramification_points(f: EisensteinData) -> list[tuple[int, int]]:
    """(j, R_j) for 1 <= j <= n; every R_j is finite thanks to the leading term."""
    ctx = BinomialContext(f.base)
    n = f.n
    valuations = [(i, f.F(i)) for i in range(n + 1)]
    points = []
    for j in range(1, n + 1):
        best = None
        for i, Fi in valuations[j:]:
            if Fi is None:
                continue
            value = n * (B(ctx, i, j) + Fi - 1) + i
            if best is None or value < best:
                best = value
        points.append((j, best))
    return points


def polygon_of(f: EisensteinData) -> RamPolygon:
    hull = lower_convex_hull(ramification_points(f))
    return RamPolygon(f.base.p, f.n, tuple((x, int(y)) for x, y in hull))


def fine_of(f: EisensteinData) -> FinePolygon:
    points = ramification_points(f)
    hull = polygon_of(f)
    on_hull = [(j, R) for j, R in points if hull.value_at(j) == R]
    return FinePolygon(f.base.p, f.n, tuple(on_hull))


def residues_of(f: EisensteinData) -> FinePolygonWithResidues:
    """Decorate the fine polygon of ``f`` with its leading residues."""
    ctx = BinomialContext(f.base)
    fine = fine_of(f)
    n = f.n
    minus_phi0 = -f.digit(0, 1)
    residues = []
    for j, R in fine.points:
        a, b = decompose(R, n)
        # term valuations are pairwise distinct mod n, so the minimum is
        # attained exactly once, at the index congruent to R (that is, b)
        attained = [
            i
            for i in range(j, n + 1)
            if f.F(i) is not None and n * (B(ctx, i, j) + f.F(i) - 1) + i == R
        ]
        if attained != [b]:
            raise AssertionError(f"minimizer at j={j} is {attained}, expected [{b}]")
        residues.append(beta(ctx, b, j) * f.phi(b) * minus_phi0 ** (-(1 + a)))
    return FinePolygonWithResidues(fine, tuple(residues))


def unif_of(f: EisensteinData) -> InvariantWithUnif:
    return InvariantWithUnif(residues_of(f), f.digit(0, 1))


# ---------------------------------------------------------------------------
# integer-form input (base field Q_p only)


_TERM = re.compile(r"^([+-]?\d*)(?:\*?x(?:\^(\d+))?)?$")


def parse_integer_polynomial(base: BaseField, text: str) -> EisensteinData:
    """Parse e.g. ``"x^8+2x^7+2x^6+2x^4+2"`` into a digit table.

    Only available over Q_p (e = f = 1), where base-p digit expansion of an
    integer coefficient is canonical.  Negative coefficients have infinite
    p-adic expansions and are truncated at a fixed depth beyond their
    valuation; the invariants computed from the table do not depend on the
    truncation depth.
    """
    if base.e != 1 or base.f != 1:
        raise ValueError("integer polynomial input requires e = f = 1")
    p = base.p
    cleaned = text.replace(" ", "").replace("-", "+-")
    parts = [part for part in cleaned.split("+") if part]
    coeffs: dict[int, int] = {}
    for part in parts:
        match = _TERM.match(part)
        if not match or (match.group(1) in ("", "+", "-") and "x" not in part):
            raise NotEisensteinError(f"cannot parse term {part!r}")
        raw_coeff, raw_exp = match.groups()
        if "x" in part:
            exp = int(raw_exp) if raw_exp else 1
        else:
            exp = 0
        coeff = int(raw_coeff) if raw_coeff not in ("", "+", "-") else (
            -1 if raw_coeff == "-" else 1
        )
        coeffs[exp] = coeffs.get(exp, 0) + coeff
    n = max(coeffs)
    if coeffs.get(n) != 1:
        raise NotEisensteinError("polynomial must be monic")
    for i, c in coeffs.items():
        if i < n and c != 0 and c % p != 0:
            raise NotEisensteinError(f"coefficient of x^{i} is a unit")
    if coeffs.get(0, 0) % (p * p) == 0:
        raise NotEisensteinError("constant coefficient must have valuation exactly 1")
    table: dict[tuple[int, int], FqElement] = {}
    for i, c in coeffs.items():
        if i == n or c == 0:
            continue
        F = vp(p, c)
        depth = F + INTEGER_DIGIT_DEPTH
        residue = c % p**depth
        for k in range(F, depth):
            digit = (residue // p**k) % p
            if digit:
                table[(i, k)] = base.fq.from_int(digit)
    return EisensteinData.from_digit_map(base, n, table)


def render_integer_polynomial(f: EisensteinData) -> str:
    """Human-readable integer form of a digit table over Q_p."""
    if f.base.e != 1 or f.base.f != 1:
        raise ValueError("integer rendering requires e = f = 1")
    p = f.base.p
    terms = [f"x^{f.n}" if f.n > 1 else "x"]
    for i in range(f.n - 1, -1, -1):
        c = sum(row_digit.coeffs[0] * p**k for k, row_digit in enumerate(f.digits[i], 1))
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}x" if c != 1 else "x")
        else:
            terms.append(f"{c}x^{i}" if c != 1 else f"x^{i}")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# exhaustive survey (test oracle)


def brute_force_survey(
    ctx: BinomialContext, n: int, digit_bound: int
) -> dict[FinePolygon, list[EisensteinData]]:
    """Group every digit table of depth <= digit_bound by its fine polygon.

    Iterates all q^(n * digit_bound) tables (minus the non-Eisenstein ones),
    so callers must stay inside the guard.  The fine polygon only depends on
    the tuple of coefficient valuations, which is memoised.
    """
    base = ctx.base
    if base.q ** (n * digit_bound) > SURVEY_GUARD:
        raise ValueError("survey size exceeds the iteration guard")
    fq = base.fq
    vectors = [tuple(v) for v in _all_vectors(fq, digit_bound)]
    trimmed = [_trim(v) for v in vectors]
    lead = []  # F value of each vector, None for the zero vector
    for v in vectors:
        F = next((k for k, d in enumerate(v, start=1) if d), None)
        lead.append(F)
    const_choices = [idx for idx, v in enumerate(vectors) if v and v[0]]
    other_choices = list(range(len(vectors)))

    fine_cache: dict[tuple, FinePolygon] = {}
    survey: dict[FinePolygon, list[EisensteinData]] = {}

    def fine_for(signature: tuple) -> FinePolygon:
        cached = fine_cache.get(signature)
        if cached is None:
            points = []
            for j in range(1, n + 1):
                best = None
                for i in range(j, n + 1):
                    Fi = 0 if i == n else signature[i]
                    if Fi is None:
                        continue
                    value = n * (B(ctx, i, j) + Fi - 1) + i
                    if best is None or value < best:
                        best = value
                points.append((j, best))
            hull = lower_convex_hull(points)
            P = RamPolygon(base.p, n, tuple((x, int(y)) for x, y in hull))
            on_hull = tuple((j, R) for j, R in points if P.value_at(j) == R)
            cached = FinePolygon(base.p, n, on_hull)
            fine_cache[signature] = cached
        return cached

    def iterate(prefix: list[int], i: int) -> None:
        if i == n:
            signature = tuple(lead[idx] for idx in prefix)
            fine = fine_for(signature)
            data = EisensteinData(base, n, tuple(trimmed[idx] for idx in prefix))
            survey.setdefault(fine, []).append(data)
            return
        for idx in const_choices if i == 0 else other_choices:
            prefix.append(idx)
            iterate(prefix, i + 1)
            prefix.pop()

    iterate([], 0)
    return survey


def _all_vectors(fq, depth: int):
    import itertools

    elems = list(fq.elements())
    return itertools.product(elems, repeat=depth)
