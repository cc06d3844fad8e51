"""Exact univariate polynomials, quasi-polynomials and shift operators.

Everything here is Fraction arithmetic; no floats anywhere.  A
quasi-polynomial of period p stores one constituent per residue class,
1-based, with the class of 0 stored last.  Evaluation works for negative
arguments through the same residue rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Tuple

from weylq.errors import InconsistencyError, ValidationError

Rational = Fraction


class RationalPolynomial:
    """Immutable polynomial with Fraction coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):  # trailing zeros are trimmed
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls(())

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "RationalPolynomial":
        if power < 0:
            raise ValidationError("monomial power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def leading_coeff(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalPolynomial):
            if self.is_zero or other.is_zero:
                return RationalPolynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return RationalPolynomial(out)
        return RationalPolynomial(tuple(c * Fraction(other) for c in self.coeffs))

    __rmul__ = __mul__

    def shift_arg(self, delta) -> "RationalPolynomial":
        """The polynomial t -> p(t + delta), computed exactly."""
        d = Fraction(delta)
        out = [Fraction(0)] * len(self.coeffs)
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            # binomial expansion of (t + d)^power
            term = c
            for k in range(power, -1, -1):
                out[k] += term * math.comb(power, k) * d ** (power - k)
        return RationalPolynomial(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalPolynomial) and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("RationalPolynomial", self.coeffs))

    def format(self, var: str = "q") -> str:
        """Human form with a common denominator, like (q^2 + 6q + 12)/12."""
        if self.is_zero:
            return "0"
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        parts = []
        for power in range(len(ints) - 1, -1, -1):
            a = ints[power]
            if a == 0:
                continue
            mag = abs(a)
            if power == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" + (f"^{power}" if power > 1 else "")
            if not parts:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(("- " if a < 0 else "+ ") + body)
        core = " ".join(parts)
        if den == 1:
            return core
        return f"({core})/{den}"

    def __repr__(self) -> str:
        return f"RationalPolynomial({self.format('t')})"


@dataclass(frozen=True)
class QuasiPolynomial:
    """Period plus one constituent per residue class 1..period.

    constituents[k-1] applies to arguments congruent to k, so the class of
    multiples of the period sits at the last index.
    """

    period: int
    constituents: Tuple[RationalPolynomial, ...]

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValidationError("period must be a positive integer")
        if len(self.constituents) != self.period:
            raise ValidationError("need exactly one constituent per residue")

    def constituent_for(self, q: int) -> RationalPolynomial:
        k = q % self.period
        return self.constituents[(k if k else self.period) - 1]

    def __call__(self, q: int) -> Fraction:
        return self.constituent_for(q)(q)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.constituents)


def from_polynomial(p: RationalPolynomial) -> QuasiPolynomial:
    """A polynomial seen as a quasi-polynomial of period 1."""
    return QuasiPolynomial(1, (p,))


def evaluate_qp(qp: QuasiPolynomial, q: int) -> Fraction:
    return qp(q)


def first_constituent(qp: QuasiPolynomial) -> RationalPolynomial:
    """The constituent attached to the residue class of 1."""
    return qp.constituents[0]


def normalize_period(qp: QuasiPolynomial, new_period: int) -> QuasiPolynomial:
    """Rewrite with a larger period that the current one divides."""
    if new_period < 1 or new_period % qp.period:
        raise ValidationError(
            f"new period {new_period} is not a multiple of {qp.period}"
        )
    if new_period == qp.period:
        return qp
    return QuasiPolynomial(
        new_period,
        tuple(qp.constituent_for(k) for k in range(1, new_period + 1)),
    )


def qp_equal(a: QuasiPolynomial, b: QuasiPolynomial) -> bool:
    """Exact equality as functions on the integers."""
    common = math.lcm(a.period, b.period)
    return (
        normalize_period(a, common).constituents
        == normalize_period(b, common).constituents
    )


def qp_add(a: QuasiPolynomial, b: QuasiPolynomial) -> QuasiPolynomial:
    common = math.lcm(a.period, b.period)
    aa = normalize_period(a, common)
    bb = normalize_period(b, common)
    return QuasiPolynomial(
        common,
        tuple(x + y for x, y in zip(aa.constituents, bb.constituents)),
    )


def qp_scale(qp: QuasiPolynomial, factor) -> QuasiPolynomial:
    return QuasiPolynomial(
        qp.period, tuple(factor * p for p in qp.constituents)
    )


def qp_sub(a: QuasiPolynomial, b: QuasiPolynomial) -> QuasiPolynomial:
    return qp_add(a, qp_scale(b, -1))


class ShiftPolynomial:
    """A finite Fraction combination of argument shifts.

    A term (offset, coeff) sends a function f to coeff * f(q - offset);
    applying a whole ShiftPolynomial sums the terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[int, object]] = ()):
        acc = {}
        for offset, coeff in terms:
            if not isinstance(offset, int) or isinstance(offset, bool):
                raise ValidationError("shift offsets must be integers")
            acc[offset] = acc.get(offset, Fraction(0)) + Fraction(coeff)
        object.__setattr__(
            self,
            "terms",
            tuple(sorted((k, v) for k, v in acc.items() if v != 0)),
        )

    def __setattr__(self, name, value):
        raise AttributeError("ShiftPolynomial is immutable")

    @classmethod
    def from_polynomial(cls, p: RationalPolynomial) -> "ShiftPolynomial":
        """Read t^k as the shift q -> q - k."""
        return cls((k, c) for k, c in enumerate(p.coeffs) if c)

    def __mul__(self, other: "ShiftPolynomial") -> "ShiftPolynomial":
        """Composition of the two operators (convolution of terms)."""
        out = []
        for o1, c1 in self.terms:
            for o2, c2 in other.terms:
                out.append((o1 + o2, c1 * c2))
        return ShiftPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("ShiftPolynomial", self.terms))

    def __repr__(self) -> str:
        return f"ShiftPolynomial({list(self.terms)!r})"


def apply_shift(shift: ShiftPolynomial, qp: QuasiPolynomial) -> QuasiPolynomial:
    """The quasi-polynomial q -> sum of coeff * qp(q - offset)."""
    p = qp.period
    out = []
    for k in range(1, p + 1):
        acc = RationalPolynomial()
        for offset, coeff in shift.terms:
            piece = qp.constituent_for(k - offset).shift_arg(-offset)
            acc = acc + coeff * piece
        out.append(acc)
    return QuasiPolynomial(p, tuple(out))


def lagrange_polynomial(
    points: Sequence[int], values: Sequence
) -> RationalPolynomial:
    """The unique polynomial through the given points, exactly."""
    if len(points) != len(values) or not points:
        raise ValidationError("need equally many points and values")
    if len(set(points)) != len(points):
        raise ValidationError("interpolation points must be distinct")
    total = RationalPolynomial()
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        basis = RationalPolynomial((1,))
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = basis * RationalPolynomial((-xj, 1))
            denom *= xi - xj
        total = total + (Fraction(yi) / denom) * basis
    return total


def interpolate_qp(
    sampler: Callable[[int], object],
    period: int,
    degree_bound: int,
    min_q: int = 1,
) -> QuasiPolynomial:
    """Recover a quasi-polynomial from samples of an integer function.

    For each residue class the sampler is read at degree_bound + 1 points
    spaced one period apart, starting at the first admissible argument at or
    above min_q, then checked on two further points.  A failed check raises
    InconsistencyError: either the claimed period or the degree bound is
    wrong, or the function only becomes quasi-polynomial later on.
    """
    if period < 1:
        raise ValidationError("period must be a positive integer")
    if degree_bound < 0:
        raise ValidationError("degree bound must be nonnegative")
    if min_q < 1:
        raise ValidationError("min_q must be a positive integer")
    constituents = []
    for k in range(1, period + 1):
        start = k if k >= min_q else k + period * (-(-(min_q - k) // period))
        points = [start + j * period for j in range(degree_bound + 1)]
        values = [sampler(q) for q in points]
        poly = lagrange_polynomial(points, values)
        for extra in range(1, 3):
            q = start + (degree_bound + extra) * period
            expected = sampler(q)
            if poly(q) != expected:
                raise InconsistencyError(
                    f"verification sample failed at q={q} (residue {k % period or period} "
                    f"mod {period}): interpolant gives {poly(q)}, function gives {expected}"
                )
        constituents.append(poly)
    return QuasiPolynomial(period, tuple(constituents))


@dataclass(frozen=True)
class SeriesTruncation:
    """Power series coefficients t^0 .. t^order, exact."""

    order: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValidationError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValidationError("need order + 1 coefficients")


def series_of_qp(qp: QuasiPolynomial, order: int) -> SeriesTruncation:
    """Ordinary generating series of the qp values at q = 1..order."""
    if order < 0:
        raise ValidationError("order must be nonnegative")
    coeffs = [Fraction(0)] + [Fraction(qp(q)) for q in range(1, order + 1)]
    return SeriesTruncation(order, tuple(coeffs))


def expand_rational_series(
    numerator: RationalPolynomial,
    denominator_exponents: Sequence[int],
    order: int,
) -> SeriesTruncation:
    """Expand numerator / product of (1 - t^c) to the requested order."""
    if order < 0:
        raise ValidationError("order must be nonnegative")
    coeffs = [Fraction(numerator.coeff(n)) for n in range(order + 1)]
    for c in denominator_exponents:
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise ValidationError("denominator exponents must be positive integers")
        # multiply by the geometric series of t^c, i.e. divide by 1 - t^c
        for n in range(c, order + 1):
            coeffs[n] += coeffs[n - c]
    return SeriesTruncation(order, tuple(coeffs))
