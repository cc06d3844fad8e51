"""Characteristic quasi-polynomials of congruence arrangements.

An arrangement is a list of integer coefficient vectors, each carrying a
set of forbidden offsets.  For a modulus q the complement count is the
number of points of (Z/q)^rank avoiding every congruence; interpolating
that count over a verified period yields the characteristic
quasi-polynomial.  Subsets of a positive system enter through their
coefficient vectors on the simple basis with offset 0.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from weylq import kernels
from weylq.errors import InconsistencyError, ResourceCapError, ValidationError
from weylq.quasipoly import QuasiPolynomial, interpolate_qp
from weylq.rootsys import RootSubset, RootSystem, normalize_subset

Vector = Tuple[int, ...]

MAX_PERIOD_VECTORS = 24


@dataclass(frozen=True)
class ArrangementSpec:
    """Deduplicated, canonically ordered congruence items.

    Each item pairs a nonzero integer vector with the sorted tuple of its
    forbidden offsets; items with equal vectors are merged.
    """

    rank: int
    items: Tuple[Tuple[Vector, Tuple[int, ...]], ...]


def make_spec(rank: int, items: Iterable[Tuple[Sequence[int], Iterable[int]]]) -> ArrangementSpec:
    """Validate and normalise raw (coeffs, offsets) pairs."""
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ValidationError("rank must be a positive integer")
    merged: Dict[Vector, set] = {}
    for coeffs, offsets in items:
        vec = tuple(coeffs)
        if len(vec) != rank:
            raise ValidationError(f"item {vec} does not have length {rank}")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in vec):
            raise ValidationError(f"item {vec} has non-integer entries")
        if not any(vec):
            raise ValidationError("zero coefficient vectors are not allowed")
        offs = set()
        for m in offsets:
            if not isinstance(m, int) or isinstance(m, bool):
                raise ValidationError(f"offset {m!r} is not an integer")
            offs.add(m)
        if not offs:
            raise ValidationError(f"item {vec} has an empty offset set")
        merged.setdefault(vec, set()).update(offs)
    return ArrangementSpec(
        rank,
        tuple((vec, tuple(sorted(offs))) for vec, offs in sorted(merged.items())),
    )


def from_root_subset(
    rs: RootSystem, subset: Iterable[int], offsets: Iterable[int] = (0,)
) -> ArrangementSpec:
    """The congruence arrangement of a subset of the positive roots."""
    psi = normalize_subset(rs, subset)
    offs = tuple(offsets)
    return make_spec(rs.rank, ((rs.positive_roots[i], offs) for i in psi))


def count_complement(spec: ArrangementSpec, q: int) -> int:
    """Points of (Z/q)^rank avoiding every congruence of the arrangement."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise ValidationError("modulus must be a positive integer")
    return kernels.complement_count(q, spec.rank, spec.items)


def smith_invariants(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Invariant factors (positive, each dividing the next) of an integer
    matrix; zero rows and columns simply contribute nothing."""
    a = [list(map(int, r)) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if any(len(r) != ncols for r in a):
        raise ValidationError("matrix rows must have equal length")
    out = []
    t = 0
    while t < min(nrows, ncols):
        piv = next(
            (
                (i, j)
                for i in range(t, nrows)
                for j in range(t, ncols)
                if a[i][j]
            ),
            None,
        )
        if piv is None:
            break
        a[t], a[piv[0]] = a[piv[0]], a[t]
        for row in a:
            row[t], row[piv[1]] = row[piv[1]], row[t]
        while True:
            # clear column t, swapping any remainder up to shrink the pivot
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, nrows):
                    if not a[i][t]:
                        continue
                    k = a[i][t] // a[t][t]
                    for j in range(t, ncols):
                        a[i][j] -= k * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
                for j in range(t + 1, ncols):
                    if not a[t][j]:
                        continue
                    k = a[t][j] // a[t][t]
                    for i in range(t, nrows):
                        a[i][j] -= k * a[i][t]
                    if a[t][j]:
                        for i in range(t, nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        changed = True
            # the pivot must also divide the trailing submatrix
            p = a[t][t]
            offender = next(
                (
                    i
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if a[i][j] % p
                ),
                None,
            )
            if offender is None:
                break
            for j in range(t, ncols):
                a[t][j] += a[offender][j]
        out.append(abs(a[t][t]))
        t += 1
    return tuple(out)


_largest_factor_memo: Dict[Tuple[int, Tuple[Vector, ...]], int] = {}


def _largest_invariant_factor(rank: int, vectors: Tuple[Vector, ...]) -> int:
    """Largest invariant factor of Z^rank modulo the span of the vectors."""
    key = (rank, vectors)
    cached = _largest_factor_memo.get(key)
    if cached is not None:
        return cached
    factors = smith_invariants(vectors) if vectors else ()
    value = factors[-1] if factors else 1
    _largest_factor_memo[key] = value
    return value


def lcm_period(spec: ArrangementSpec) -> int:
    """Least common multiple, over every sublist of the distinct coefficient
    vectors, of the largest invariant factor of the sublist's quotient.

    Offsets and multiplicities are ignored; the vector count is capped
    because the sublist enumeration is exponential.
    """
    vectors = tuple(vec for vec, _ in spec.items)
    if len(vectors) > MAX_PERIOD_VECTORS:
        raise ResourceCapError(
            f"{len(vectors)} distinct vectors exceed the period-search cap "
            f"{MAX_PERIOD_VECTORS}"
        )
    period = 1
    n = len(vectors)
    for mask in range(1 << n):
        chosen = tuple(vectors[i] for i in range(n) if mask >> i & 1)
        period = math.lcm(period, _largest_invariant_factor(spec.rank, chosen))
    return period


def default_min_q(spec: ArrangementSpec) -> int:
    """First dilation from which interpolation samples are taken.

    With all offsets zero the complement count is quasi-polynomial from
    q = 1 on.  With nonzero offsets it is only eventually quasi-polynomial,
    so sampling starts above (span + 3) times the largest item height, the
    bound behind the deformation formulas.
    """
    offsets = [m for _, offs in spec.items for m in offs]
    if not offsets or all(m == 0 for m in offsets):
        return 1
    below = max(0, -min(offsets))
    above = max(0, max(offsets))
    ht = max(sum(abs(c) for c in vec) for vec, _ in spec.items)
    return (below + above + 3) * (ht + 1) + 1


@functools.lru_cache(maxsize=None)
def char_quasi(
    spec: ArrangementSpec,
    period_override: int | None = None,
    min_q: int | None = None,
) -> QuasiPolynomial:
    """The characteristic quasi-polynomial of the arrangement.

    The period defaults to lcm_period.  An override is cross-checked
    against one full combined period of counts beyond the sampling floor;
    since the pointwise difference is periodic there, any override that
    produces a wrong result must fail inside that window.
    """
    period = lcm_period(spec) if period_override is None else period_override
    if not isinstance(period, int) or isinstance(period, bool) or period < 1:
        raise ValidationError("period override must be a positive integer")
    start = default_min_q(spec) if min_q is None else min_q
    qp = interpolate_qp(
        lambda q: count_complement(spec, q), period, spec.rank, min_q=start
    )
    if period_override is not None:
        guard = math.lcm(period, lcm_period(spec))
        for q in range(start, start + guard):
            expected = count_complement(spec, q)
            if qp(q) != expected:
                raise InconsistencyError(
                    f"period override {period_override} is inconsistent: "
                    f"the count at q={q} is {expected} but the interpolant "
                    f"gives {qp(q)}"
                )
    return qp


def char_quasi_subset(rs: RootSystem, subset: Iterable[int]) -> QuasiPolynomial:
    """Characteristic quasi-polynomial of a subset of the positive system."""
    return char_quasi(from_root_subset(rs, subset))
