"""Lattice-point counts for the dilated fundamental alcove.

In fundamental-coweight coordinates the q-dilated closed alcove is the set
of integer vectors z >= 0 with sum of marks[i] * z[i] at most q, so every
count here is a one-dimensional knapsack recursion over that weighted sum.
Walls are numbered 0..rank: wall i >= 1 is z[i-1] = 0 with mark marks[i-1],
and wall 0 is the affine one, weighted sum = q, with mark 1.
"""

from __future__ import annotations

import functools
import math
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from weylq.errors import DomainError, ValidationError
from weylq.quasipoly import QuasiPolynomial, interpolate_qp
from weylq.rootsys import RootSystem


def _check_q(q: int, minimum: int) -> None:
    if not isinstance(q, int) or isinstance(q, bool):
        raise ValidationError(f"dilation must be an integer, got {q!r}")
    if q < minimum:
        raise ValidationError(f"dilation must be at least {minimum}, got {q}")


def _sum_counts(weights: Sequence[int], lows: Sequence[int], limit: int) -> int:
    """Number of integer vectors z with z[i] >= lows[i] and
    sum weights[i] * z[i] <= limit, by one knapsack pass per coordinate."""
    if limit < 0:
        return 0
    dp = [0] * (limit + 1)
    dp[0] = 1
    for c, low in zip(weights, lows):
        new = [0] * (limit + 1)
        base = low * c
        for s in range(base, limit + 1):
            new[s] = dp[s - base]
            if s >= c:
                new[s] += new[s - c]
        dp = new
    return sum(dp)


def count_closed(rs: RootSystem, q: int) -> int:
    """Points of the q-dilated closed alcove."""
    _check_q(q, 0)
    return _sum_counts(rs.marks, (0,) * rs.rank, q)


def count_open(rs: RootSystem, q: int) -> int:
    """Points of the q-dilated open alcove: all coordinates positive and
    the weighted sum strictly below q."""
    _check_q(q, 1)
    return _sum_counts(rs.marks, (1,) * rs.rank, q - 1)


def _alcove_qp(rs: RootSystem, closed: bool) -> QuasiPolynomial:
    period = math.lcm(*rs.marks)
    counter = count_closed if closed else count_open
    return interpolate_qp(lambda q: counter(rs, q), period, rs.rank)


@functools.lru_cache(maxsize=None)
def ehrhart_closed_qp(rs: RootSystem) -> QuasiPolynomial:
    """Quasi-polynomial of count_closed, period lcm of the marks."""
    return _alcove_qp(rs, closed=True)


@functools.lru_cache(maxsize=None)
def ehrhart_open_qp(rs: RootSystem) -> QuasiPolynomial:
    """Quasi-polynomial of count_open, period lcm of the marks."""
    return _alcove_qp(rs, closed=False)


def _facet_marks(rs: RootSystem) -> Tuple[int, ...]:
    """Mark of each wall 0..rank; the affine wall counts 1."""
    return (1,) + tuple(rs.marks)


def _normalize_facets(rs: RootSystem, facet_indices: Iterable[int]) -> Tuple[int, ...]:
    out = sorted(set(facet_indices))
    for i in out:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i <= rs.rank:
            raise ValidationError(f"facet index {i!r} out of range 0..{rs.rank}")
    return tuple(out)


def count_minus_facets(rs: RootSystem, q: int, facet_indices: Iterable[int]) -> int:
    """Points of the q-dilated closed alcove off the selected walls.

    Only asserted above the removal threshold: q must exceed the sum of the
    selected walls' marks.
    """
    _check_q(q, 0)
    facets = _normalize_facets(rs, facet_indices)
    cmarks = _facet_marks(rs)
    threshold = sum(cmarks[i] for i in facets)
    if q <= threshold:
        raise DomainError(
            f"removal needs q > {threshold} (sum of selected marks), got {q}"
        )
    lows = [1 if (i + 1) in facets else 0 for i in range(rs.rank)]
    limit = q - 1 if 0 in facets else q
    return _sum_counts(rs.marks, lows, limit)


def count_minus_bands(
    rs: RootSystem, q: int, bands: Mapping[int, Sequence[int]]
) -> int:
    """Points of the closed alcove off a band [0..b_i] of parallel walls at
    each selected facet; each band must start at 0."""
    _check_q(q, 0)
    widths: Dict[int, int] = {}
    for i, interval in bands.items():
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i <= rs.rank:
            raise ValidationError(f"facet index {i!r} out of range 0..{rs.rank}")
        a, b = interval
        if a != 0:
            raise ValidationError(
                "bands here start at 0; use count_minus_band_general for [a,b] with a >= 1"
            )
        if not isinstance(b, int) or b < 0:
            raise ValidationError(f"band width must be a nonnegative integer, got {b!r}")
        widths[i] = b
    cmarks = _facet_marks(rs)
    threshold = sum((b + 1) * cmarks[i] for i, b in widths.items())
    if q <= threshold:
        raise DomainError(
            f"band removal needs q > {threshold}, got {q}"
        )
    lows = [widths[i + 1] + 1 if (i + 1) in widths else 0 for i in range(rs.rank)]
    limit = q - (widths[0] + 1) if 0 in widths else q
    return _sum_counts(rs.marks, lows, limit)


def count_minus_band_general(
    rs: RootSystem, q: int, facet: int, interval: Sequence[int]
) -> int:
    """Points of the closed alcove off the walls a..b parallel to one facet,
    for a band not touching the facet itself (a >= 1)."""
    _check_q(q, 0)
    if not isinstance(facet, int) or isinstance(facet, bool) or not 0 <= facet <= rs.rank:
        raise ValidationError(f"facet index {facet!r} out of range 0..{rs.rank}")
    a, b = interval
    if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < a:
        raise ValidationError("interval must be integers 1 <= a <= b")
    c = _facet_marks(rs)[facet]
    threshold = (b + 1) * c
    if q <= threshold:
        raise DomainError(f"band removal needs q > {threshold}, got {q}")
    # all points minus those whose facet coordinate lies in a..b
    total = count_closed(rs, q)
    if facet == 0:
        in_band = sum(
            _sum_counts(rs.marks, (0,) * rs.rank, q - m)
            - _sum_counts(rs.marks, (0,) * rs.rank, q - m - 1)
            for m in range(a, b + 1)
        )
        return total - in_band
    weights = list(rs.marks)
    coord = facet - 1
    in_band = 0
    others = weights[:coord] + weights[coord + 1 :]
    for z in range(a, b + 1):
        rest = q - weights[coord] * z
        if rest < 0:
            break
        in_band += _sum_counts(others, (0,) * (rs.rank - 1), rest)
    return total - in_band
