"""The shift-operator compatibility decision for root subsets.

A subset is compatible when its characteristic quasi-polynomial agrees with
the descent-statistic shift formula applied to the closed-alcove count.
Both sides are exact quasi-polynomials, so the decision is an exact
equality check; a failing subset yields the smallest positive witness.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, NamedTuple, Optional, Tuple

from weylq.charquasi import char_quasi, from_root_subset
from weylq.ehrhart import ehrhart_closed_qp
from weylq.errors import InconsistencyError, ValidationError
from weylq.eulerian import eulerian_poly
from weylq.quasipoly import (
    QuasiPolynomial,
    SeriesTruncation,
    ShiftPolynomial,
    apply_shift,
    expand_rational_series,
    qp_equal,
    qp_sub,
    series_of_qp,
)
from weylq.rootsys import RootSubset, RootSystem, normalize_subset


class Witness(NamedTuple):
    """Smallest positive argument where the two sides differ."""

    residue: int
    q: int


class CompatResult(NamedTuple):
    compatible: bool
    witness: Optional[Witness]


def shift_formula_qp(rs: RootSystem, subset: Iterable[int]) -> QuasiPolynomial:
    """The descent-statistic shift formula applied to the closed alcove."""
    shift = ShiftPolynomial.from_polynomial(eulerian_poly(rs, subset))
    return apply_shift(shift, ehrhart_closed_qp(rs))


@functools.lru_cache(maxsize=None)
def _decide(rs: RootSystem, psi: RootSubset) -> CompatResult:
    chi = char_quasi(from_root_subset(rs, psi))
    formula = shift_formula_qp(rs, psi)
    if qp_equal(chi, formula):
        return CompatResult(True, None)
    period = math.lcm(chi.period, formula.period)
    for q in range(1, period * (rs.rank + 3) + 1):
        if chi(q) != formula(q):
            residue = q % period or period
            return CompatResult(False, Witness(residue, q))
    raise InconsistencyError("unequal quasi-polynomials with no witness in range")


def is_compatible(rs: RootSystem, subset: Iterable[int]) -> CompatResult:
    """Decide compatibility; on failure include the smallest witness."""
    return _decide(rs, normalize_subset(rs, subset))


def defect_qp(rs: RootSystem, subset: Iterable[int]) -> QuasiPolynomial:
    """Shift formula minus characteristic quasi-polynomial."""
    psi = normalize_subset(rs, subset)
    return qp_sub(shift_formula_qp(rs, psi), char_quasi(from_root_subset(rs, psi)))


def verify_genfunc(rs: RootSystem, subset: Iterable[int], order: int) -> bool:
    """Check the generating-function form of compatibility to finite order:
    the series of the characteristic quasi-polynomial against the descent
    polynomial over the product of (1 - t^mark)."""
    if order < 3 * rs.coxeter_number:
        raise ValidationError(
            f"order must be at least three Coxeter numbers ({3 * rs.coxeter_number})"
        )
    psi = normalize_subset(rs, subset)
    lhs = series_of_qp(char_quasi(from_root_subset(rs, psi)), order)
    rhs = expand_rational_series(
        eulerian_poly(rs, psi), (1,) + tuple(rs.marks), order
    )
    return lhs == rhs
