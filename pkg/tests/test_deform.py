"""Interval deformations: spec builders, closed formulas and their limits.

The closed formulas are exact for some subset/interval combinations and
provably off-by-a-constant for others; the grid test pins the complete
verdict table for every ideal of the three smallest systems, and the
counterexample test pins the failing polynomials themselves.
"""

import pytest

from weylq.charquasi import char_quasi, from_root_subset
from weylq.deform import cqp_type1_formula, cqp_type2_formula, type1_spec, type2_spec, verify_deform
from weylq.ehrhart import ehrhart_closed_qp
from weylq.errors import ValidationError
from weylq.eulerian import m_poly
from weylq.quasipoly import (
    RationalPolynomial,
    ShiftPolynomial,
    apply_shift,
    evaluate_qp,
    first_constituent,
    from_polynomial,
    qp_equal,
)
from weylq.rootsys import build_root_system, enumerate_ideals, subset_complement

INTERVALS = [(0, 0), (0, 1), (1, 1)]  # (a, b) meaning [-a, b]
POSITIVE_B = [1, 2]

# subset/interval combinations where the closed formula provably differs
# from the true quasi-polynomial (always by a positive constant)
TYPE2_MIXED_FAILURES = {
    ("A", 2): {(0, 1)},
    ("A", 3): {(0, 1), (1, 2), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 3, 4)},
    ("G", 2): {(0, 1), (0, 1, 2, 3, 4)},
}


@pytest.fixture(scope="module")
def g2():
    return build_root_system("G", 2)


@pytest.fixture(scope="module")
def a2():
    return build_root_system("A", 2)


def poly(*coeffs):
    return RationalPolynomial(coeffs)


def test_type1_spec_offsets(g2):
    spec = type1_spec(g2, (0, 1), -1, 2)
    assert spec.items == (((0, 1), (-1, 0, 1, 2)), ((1, 0), (-1, 0, 1, 2)))
    assert type1_spec(g2, (0, 1), 0, 0) == from_root_subset(g2, (0, 1))


def test_type2_spec_offsets(g2):
    spec = type2_spec(g2, (0,), (0, 1), (1, 1))
    by_vector = dict(spec.items)
    assert by_vector[(0, 1)] == (0, 1)
    for i in range(1, 6):
        assert by_vector[g2.positive_roots[i]] == (1,)


def test_interval_validation(g2):
    with pytest.raises(ValidationError):
        type1_spec(g2, (0,), 2, 1)
    with pytest.raises(ValidationError):
        type1_spec(g2, (0,), 0, True)
    with pytest.raises(ValidationError):
        type2_spec(g2, (0,), (0,), (0, 1))


def test_type2_duality(g2):
    """Swapping subset and complement along with their intervals is a no-op."""
    for subset in [(0,), (0, 1), (1, 2, 5), (0, 1, 2, 3, 4)]:
        comp = subset_complement(g2, subset)
        assert type2_spec(g2, subset, (-1, 1), (0, 2)) == type2_spec(
            g2, comp, (0, 2), (-1, 1)
        )


def test_type1_full_is_type2_with_equal_intervals(g2):
    full = tuple(range(6))
    for subset in [(), (0, 1), (1, 2, 5)]:
        assert type2_spec(g2, subset, (0, 1), (0, 1)) == type1_spec(g2, full, 0, 1)


def test_empty_subset_deformation(a2):
    spec = type1_spec(a2, (), -3, 3)
    qp = char_quasi(spec)
    assert qp.period == 1
    assert first_constituent(qp) == poly(0, 0, 1)
    assert verify_deform(a2, spec, from_polynomial(poly(0, 0, 1)))


@pytest.mark.parametrize("family, rank", [("A", 2), ("A", 3), ("B", 2), ("G", 2)])
def test_shi_deformation(family, rank):
    """Offsets {0,1} on the full system: every constituent is (q-h)^rank."""
    rs = build_root_system(family, rank)
    full = tuple(range(len(rs.positive_roots)))
    h = rs.coxeter_number
    qp = char_quasi(type1_spec(rs, full, 0, 1))
    for q in range(1, 3 * h + 1):
        assert evaluate_qp(qp, q) == (q - h) ** rs.rank
    formula = cqp_type1_formula(rs, full, "symmetric", a=0, b=1)
    assert qp_equal(formula, qp)


def test_closed_formula_verdict_grid():
    """Exact pass/fail table of the five closed formulas on every ideal.

    Interval grid per the module contract: symmetric and two-sided cases
    run over [-a, b] with (a, b) in {(0,0), (0,1), (1,1)}; one-sided cases
    run over [1, b] with b in {1, 2}.  The symmetric single-interval
    formula is exact only for the undeformed interval or for the empty
    set, the full set and the full set minus its highest root; one-sided
    deformations of a proper nonempty subset are never exact; the fully
    two-sided formula is always exact; the remaining mixed cases fail
    exactly on the frozen combinations pinned here.
    """
    failures = 0
    for family, rank in [("A", 2), ("A", 3), ("G", 2)]:
        rs = build_root_system(family, rank)
        n = len(rs.positive_roots)
        full = tuple(range(n))
        special = {(), tuple(range(n - 1)), full}
        mixed_failures = TYPE2_MIXED_FAILURES[(family, rank)]
        for ideal in enumerate_ideals(rs):
            proper = ideal not in ((), full)
            for a, b in INTERVALS:
                ok = verify_deform(
                    rs,
                    type1_spec(rs, ideal, -a, b),
                    cqp_type1_formula(rs, ideal, "symmetric", a=a, b=b),
                )
                assert ok == ((a, b) == (0, 0) or ideal in special), (
                    family, rank, ideal, "symmetric", a, b,
                )
                failures += not ok
            for b in POSITIVE_B:
                ok = verify_deform(
                    rs,
                    type1_spec(rs, ideal, 1, b),
                    cqp_type1_formula(rs, ideal, "positive", b=b),
                )
                assert ok == (not proper), (family, rank, ideal, "positive", b)
                failures += not ok
            for a, b in INTERVALS:
                for c, d in INTERVALS:
                    ok = verify_deform(
                        rs,
                        type2_spec(rs, ideal, (-a, b), (-c, d)),
                        cqp_type2_formula(rs, ideal, "i", a=a, b=b, c=c, d=d),
                    )
                    assert ok, (family, rank, ideal, "i", a, b, c, d)
            for a, b in INTERVALS:
                for d in POSITIVE_B:
                    ok = verify_deform(
                        rs,
                        type2_spec(rs, ideal, (-a, b), (1, d)),
                        cqp_type2_formula(rs, ideal, "ii", a=a, b=b, d=d),
                    )
                    expected = not (
                        (a, b, d) == (0, 0, 2) and ideal in mixed_failures
                    )
                    assert ok == expected, (family, rank, ideal, "ii", a, b, d)
                    failures += not ok
            for b in POSITIVE_B:
                for d in POSITIVE_B:
                    ok = verify_deform(
                        rs,
                        type2_spec(rs, ideal, (1, b), (1, d)),
                        cqp_type2_formula(rs, ideal, "iii", b=b, d=d),
                    )
                    assert ok == ((b, d) != (2, 1) or not proper), (
                        family, rank, ideal, "iii", b, d,
                    )
                    failures += not ok
    assert failures == 108


def test_counterexample_polynomials(a2):
    """The simplest failing cases, with both sides pinned exactly."""
    subset = (1,)  # one simple root
    positive = char_quasi(type1_spec(a2, subset, 1, 1))
    assert positive.period == 1
    assert first_constituent(positive) == poly(0, -1, 1)
    formula = cqp_type1_formula(a2, subset, "positive", b=1)
    assert qp_equal(formula, from_polynomial(poly(1, -1, 1)))

    symmetric = char_quasi(type1_spec(a2, subset, 0, 1))
    assert first_constituent(symmetric) == poly(0, -2, 1)
    formula01 = cqp_type1_formula(a2, subset, "symmetric", a=0, b=1)
    assert qp_equal(formula01, from_polynomial(poly(1, -2, 1)))


@pytest.mark.parametrize("family, rank", [("A", 2), ("B", 2), ("G", 2)])
def test_mixed_unit_interval_formula(family, rank):
    """Offsets [0,1] on the subset and {0} elsewhere: the closed formula,
    the shifted m-polynomial and brute force all agree on every ideal."""
    rs = build_root_system(family, rank)
    alcove = ehrhart_closed_qp(rs)
    for ideal in enumerate_ideals(rs):
        formula = cqp_type2_formula(rs, ideal, "i", a=0, b=1, c=0, d=0)
        via_m = apply_shift(ShiftPolynomial.from_polynomial(m_poly(rs, ideal)), alcove)
        brute = char_quasi(type2_spec(rs, ideal, (0, 1), (0, 0)))
        assert qp_equal(formula, via_m)
        assert qp_equal(formula, brute)


def test_formula_requires_compatible_subset(g2):
    with pytest.raises(ValidationError, match="not compatible"):
        cqp_type1_formula(g2, (1, 2, 5), "symmetric", a=0, b=0)
    with pytest.raises(ValidationError, match="not compatible"):
        cqp_type2_formula(g2, (2,), "i", a=0, b=0, c=0, d=0)


def test_formula_parameter_validation(g2):
    with pytest.raises(ValidationError):
        cqp_type1_formula(g2, (0,), "diagonal", a=0, b=0)
    with pytest.raises(ValidationError):
        cqp_type1_formula(g2, (0,), "symmetric", a=0)
    with pytest.raises(ValidationError):
        cqp_type1_formula(g2, (0,), "symmetric", a=-1, b=0)
    with pytest.raises(ValidationError):
        cqp_type1_formula(g2, (0,), "positive", a=1, b=2)
    with pytest.raises(ValidationError):
        cqp_type1_formula(g2, (0,), "positive", b=0)
    with pytest.raises(ValidationError):
        cqp_type2_formula(g2, (0,), "ii", a=0, b=0, c=1, d=2)
    with pytest.raises(ValidationError):
        cqp_type2_formula(g2, (0,), "iii", b=1, d=0)
    with pytest.raises(ValidationError):
        cqp_type2_formula(g2, (0,), "iv", a=0, b=0, c=0, d=0)


def test_verify_deform_rank_mismatch(g2):
    a3 = build_root_system("A", 3)
    spec = type1_spec(a3, (0,), 0, 0)
    with pytest.raises(ValidationError):
        verify_deform(g2, spec, ehrhart_closed_qp(g2))


def test_verify_deform_detects_wrong_formula(g2):
    """The undeformed three-root subset against its (wrong) closed formula."""
    from weylq.compat import shift_formula_qp

    spec = type1_spec(g2, (1, 2, 5), 0, 0)
    assert not verify_deform(g2, spec, shift_formula_qp(g2, (1, 2, 5)))
    assert verify_deform(g2, spec, char_quasi(spec))
