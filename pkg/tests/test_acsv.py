"""Unit tests for the multivariate critical-point machinery."""

import math

import numpy as np
import pytest

from gvbound import acsv
from gvbound.acsv import (
    CriticalPoint,
    SparseMultivariatePolynomial,
    critical_system_residual,
    growth_exponent,
    solve_critical_point,
    subexponential_note,
)
from gvbound.errors import (
    DimensionMismatchError,
    DomainError,
    NonConvergenceError,
)


def binomial_denominator() -> SparseMultivariatePolynomial:
    """H(x, y) = 1 - x - y, whose diagonal coefficients are C(2n, n)."""
    return SparseMultivariatePolynomial(2, [((0, 0), 1.0), ((1, 0), -1.0), ((0, 1), -1.0)])


def test_polynomial_merges_and_drops_terms():
    p = SparseMultivariatePolynomial(
        2, [((1, 0), 2.0), ((1, 0), 3.0), ((0, 1), 0.0), ((0, 0), 1.0)]
    )
    assert p((0.0, 0.0)) == 1.0
    assert p((1.0, 5.0)) == 6.0
    assert len(p.terms) == 2


def test_polynomial_validates_exponents():
    with pytest.raises(DimensionMismatchError):
        SparseMultivariatePolynomial(2, [((1,), 1.0)])
    with pytest.raises(DomainError):
        SparseMultivariatePolynomial(1, [((-1,), 1.0)])
    with pytest.raises(DomainError):
        SparseMultivariatePolynomial(0, [])


def test_partial_derivatives():
    # p = x^2 y + 3x
    p = SparseMultivariatePolynomial(2, [((2, 1), 1.0), ((1, 0), 3.0)])
    px = p.partial(0)
    py = p.partial(1)
    assert px((2.0, 5.0)) == pytest.approx(2 * 2.0 * 5.0 + 3.0)
    assert py((2.0, 5.0)) == pytest.approx(4.0)
    # differentiating away the last variable occurrence leaves a constant
    assert py((7.0, 11.0)) == pytest.approx(49.0)


def test_evaluate_matches_call():
    p = binomial_denominator()
    assert acsv.evaluate(p, (0.25, 0.5)) == pytest.approx(0.25)
    assert p((0.25, 0.5)) == pytest.approx(0.25)
    with pytest.raises(DimensionMismatchError):
        acsv.evaluate(p, (0.25,))


def test_residual_components_on_binomial_system():
    H = binomial_denominator()
    res = critical_system_residual(H, (1.0, 1.0), (0.5, 0.5))
    np.testing.assert_allclose(res, [0.0, 0.0], atol=1e-15)
    res_off = critical_system_residual(H, (1.0, 1.0), (0.4, 0.4))
    # first component is H itself, second the gradient-proportionality gap
    assert res_off[0] == pytest.approx(0.2, abs=1e-15)
    assert res_off[1] == pytest.approx(0.0, abs=1e-15)


def test_residual_direction_validation():
    H = binomial_denominator()
    with pytest.raises(DimensionMismatchError):
        critical_system_residual(H, (1.0,), (0.5, 0.5))
    with pytest.raises(DomainError):
        critical_system_residual(H, (1.0, 0.0), (0.5, 0.5))
    with pytest.raises(DomainError):
        critical_system_residual(H, (1.0, -1.0), (0.5, 0.5))


def test_solve_critical_point_central_binomial():
    H = binomial_denominator()
    cp = solve_critical_point(H, (1.0, 1.0), initial=(0.3, 0.7))
    assert isinstance(cp, CriticalPoint)
    np.testing.assert_allclose(cp.z, [0.5, 0.5], atol=1e-9)
    assert cp.residual_norm <= 1e-9
    # C(2n, n) grows like 4^n, i.e. 2 bits per coordinate step
    assert growth_exponent(cp) == pytest.approx(2.0, abs=1e-9)


def test_solve_critical_point_skewed_direction():
    # coefficients of 1/(1 - x - y) along direction (2, 1) grow like
    # C(3n, n), whose exponent is 3 log2 3 - 2
    H = binomial_denominator()
    cp = solve_critical_point(H, (2.0, 1.0))
    expected = 3.0 * math.log2(3.0) - 2.0
    assert growth_exponent(cp) == pytest.approx(expected, abs=1e-9)
    np.testing.assert_allclose(cp.z, [2.0 / 3.0, 1.0 / 3.0], atol=1e-9)


def test_solve_critical_point_reports_nonconvergence():
    # H = 1 + x^2 + y^2 has no zero at all, so the residual can never
    # reach the tolerance and the iteration must report failure
    H = SparseMultivariatePolynomial(2, [((0, 0), 1.0), ((2, 0), 1.0), ((0, 2), 1.0)])
    with pytest.raises(NonConvergenceError):
        solve_critical_point(H, (1.0, 1.0))


def test_solve_critical_point_validates_initial():
    H = binomial_denominator()
    with pytest.raises(DimensionMismatchError):
        solve_critical_point(H, (1.0, 1.0), initial=(0.5,))
    with pytest.raises(DomainError):
        solve_critical_point(H, (1.0, 1.0), initial=(0.5, -0.5))


def test_subexponential_note_mentions_decay_order():
    assert "n^(-3/2)" in subexponential_note(4)
    assert "n^(-1/2)" in subexponential_note(2)
