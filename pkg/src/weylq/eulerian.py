"""Mark-weighted descent and ascent statistics over the Weyl group.

The extended base consists of the negative of the highest root (position 0,
mark 1) followed by the simple roots (position i, mark c_i).  For a subset
of the positive roots, a group element sorts each extended-base image into
one of four classes: negative outside or inside the subset (descents), or
positive outside or inside it (ascents), each weighted by the mark.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from weylq.errors import InconsistencyError, ValidationError
from weylq.quasipoly import RationalPolynomial
from weylq.rootsys import (
    RootSubset,
    RootSystem,
    WeylElement,
    classify_length,
    enumerate_weyl,
    normalize_subset,
    root_index,
    root_norm2,
    weyl_act,
)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class DescentProfile:
    """Mark-weighted image counts of one element against one subset.

    descent: images that are negatives of roots outside the subset;
    descent_bar: negatives of roots inside it; ascent: roots outside;
    ascent_bar: roots inside.  The four always add up to the Coxeter
    number.
    """

    descent: int
    descent_bar: int
    ascent: int
    ascent_bar: int

    @property
    def total(self) -> int:
        return self.descent + self.descent_bar + self.ascent + self.ascent_bar


def extended_base(rs: RootSystem) -> Tuple[Tuple[Vector, int], ...]:
    """Pairs (root, mark) for positions 0..rank of the extended base."""
    out = [(tuple(-c for c in rs.highest_root), 1)]
    for i in range(rs.rank):
        simple = tuple(1 if k == i else 0 for k in range(rs.rank))
        out.append((simple, rs.marks[i]))
    return tuple(out)


def descent_profile(rs: RootSystem, subset: Iterable[int], w: WeylElement) -> DescentProfile:
    """Classify the extended-base images of one element."""
    psi = set(normalize_subset(rs, subset))
    lookup = root_index(rs)
    descent = descent_bar = ascent = ascent_bar = 0
    for root, mark in extended_base(rs):
        image = weyl_act(rs, w, root)
        if image in lookup:
            if lookup[image] in psi:
                ascent_bar += mark
            else:
                ascent += mark
        else:
            neg = tuple(-c for c in image)
            if neg not in lookup:
                raise InconsistencyError(f"image {image} is not a root")
            if lookup[neg] in psi:
                descent_bar += mark
            else:
                descent += mark
    return DescentProfile(descent, descent_bar, ascent, ascent_bar)


@functools.lru_cache(maxsize=None)
def _profiles(rs: RootSystem, psi: RootSubset) -> Tuple[DescentProfile, ...]:
    return tuple(
        descent_profile(rs, psi, w) for w in enumerate_weyl(rs)
    )


def profiles_over_weyl(
    rs: RootSystem, subset: Iterable[int]
) -> Tuple[DescentProfile, ...]:
    """Profiles of every group element, aligned with enumerate_weyl order."""
    return _profiles(rs, normalize_subset(rs, subset))


def _fiber_polynomial(rs: RootSystem, exponents: Iterable[int]) -> RationalPolynomial:
    """Sum of t^e over the exponents, divided by the index of connection;
    refuses when some fiber count is not divisible by it."""
    counts: Dict[int, int] = {}
    for e in exponents:
        counts[e] = counts.get(e, 0) + 1
    f = rs.index_of_connection
    coeffs = [0] * (max(counts) + 1 if counts else 0)
    for e, c in counts.items():
        if c % f:
            raise InconsistencyError(
                f"fiber at exponent {e} has {c} elements, not divisible by f={f}"
            )
        coeffs[e] = c // f
    return RationalPolynomial(coeffs)


def eulerian_poly(rs: RootSystem, subset: Iterable[int]) -> RationalPolynomial:
    """Generating polynomial of h minus the descent statistic, scaled down
    by the index of connection; always has integer coefficients."""
    h = rs.coxeter_number
    psi = normalize_subset(rs, subset)
    return _fiber_polynomial(rs, (h - p.descent for p in _profiles(rs, psi)))


def generalized_eulerian(rs: RootSystem) -> RationalPolynomial:
    """The subset-free special case, against the empty subset."""
    return eulerian_poly(rs, ())


def m_poly(rs: RootSystem, subset: Iterable[int]) -> RationalPolynomial:
    """Generating polynomial of h plus the inside-ascent statistic, scaled
    down by the index of connection."""
    h = rs.coxeter_number
    psi = normalize_subset(rs, subset)
    return _fiber_polynomial(rs, (h + p.ascent_bar for p in _profiles(rs, psi)))


def _length_class_size(rs: RootSystem, cls: str) -> int:
    """Number of roots (both signs) in a length class."""
    n = sum(1 for r in rs.positive_roots if classify_length(rs, r) == cls)
    return 2 * n


def eulerian_delta_complement(rs: RootSystem, delta_index: int) -> RationalPolynomial:
    """Closed form for the subset missing exactly one root.

    Only the length class of the removed root matters: each extended-base
    root of that class contributes a fiber of equal size below the top
    exponent, everything else lands at the top.
    """
    n = len(rs.positive_roots)
    if not isinstance(delta_index, int) or isinstance(delta_index, bool) or not 0 <= delta_index < n:
        raise ValidationError(f"root index {delta_index!r} out of range 0..{n - 1}")
    delta = rs.positive_roots[delta_index]
    cls = classify_length(rs, delta)
    h = rs.coxeter_number
    f = rs.index_of_connection
    w_order = rs.weyl_order
    class_size = _length_class_size(rs, cls)
    base = [
        (root, mark)
        for root, mark in extended_base(rs)
        if classify_length(rs, root) == cls
    ]
    coeffs = [Fraction(0)] * (h + 1)
    unit = Fraction(w_order, f * class_size)
    for _, mark in base:
        coeffs[h - mark] += unit
    coeffs[h] += Fraction(w_order * (class_size - len(base)), f * class_size)
    poly = RationalPolynomial(coeffs)
    if not poly.is_integral:
        raise InconsistencyError("single-root closed form is not integral")
    return poly


def omega_partition(
    rs: RootSystem, delta_index: int
) -> Dict[int, Tuple[WeylElement, ...]]:
    """Group elements sending some extended-base root onto the negative of
    the chosen root, fibered by the extended-base position.

    Keys are the positions whose root shares the chosen root's length
    class; values follow enumerate_weyl order.
    """
    n = len(rs.positive_roots)
    if not isinstance(delta_index, int) or isinstance(delta_index, bool) or not 0 <= delta_index < n:
        raise ValidationError(f"root index {delta_index!r} out of range 0..{n - 1}")
    delta = rs.positive_roots[delta_index]
    target = tuple(-c for c in delta)
    cls = classify_length(rs, delta)
    base = extended_base(rs)
    fibers: Dict[int, list] = {
        i: []
        for i, (root, _) in enumerate(base)
        if classify_length(rs, root) == cls
    }
    for w in enumerate_weyl(rs):
        for i, (root, _) in enumerate(base):
            if weyl_act(rs, w, root) == target:
                if i not in fibers:
                    raise InconsistencyError(
                        "length classes are not preserved by the action"
                    )
                fibers[i].append(w)
    return {i: tuple(ws) for i, ws in fibers.items()}
