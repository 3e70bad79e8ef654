"""Unit tests for the shared numeric primitives."""

import math

import numpy as np
import pytest

from gvbound.errors import (
    DomainError,
    NoRootFoundError,
    NoSignChangeError,
)
from gvbound.numeric import (
    BracketedRoot,
    RealPolynomial,
    binomial_exact,
    entropy,
    find_root_bisection,
    smallest_positive_root,
)


def test_entropy_endpoints_and_peak():
    assert entropy(0.0) == 0.0
    assert entropy(1.0) == 0.0
    assert entropy(0.5) == 1.0


def test_entropy_symmetry_and_known_value():
    rng = np.random.default_rng(7)
    for p in rng.uniform(0.0, 1.0, size=20):
        assert entropy(float(p)) == pytest.approx(entropy(float(1.0 - p)), abs=1e-12)
    assert entropy(0.3) == pytest.approx(0.8812908992306927, abs=1e-15)


def test_entropy_rejects_out_of_range():
    with pytest.raises(DomainError):
        entropy(-0.01)
    with pytest.raises(DomainError):
        entropy(1.01)


def test_binomial_exact_matches_pascal():
    for n in range(0, 12):
        for k in range(0, n + 1):
            if 0 < k < n:
                expected = binomial_exact(n - 1, k - 1) + binomial_exact(n - 1, k)
                assert binomial_exact(n, k) == expected
    assert binomial_exact(0, 0) == 1
    assert binomial_exact(52, 5) == 2598960


def test_binomial_exact_is_arbitrary_precision():
    value = binomial_exact(200, 100)
    assert isinstance(value, int)
    assert value == math.comb(200, 100)
    assert value > 2**195


def test_binomial_exact_rejects_bad_arguments():
    with pytest.raises(DomainError):
        binomial_exact(-1, 0)
    with pytest.raises(DomainError):
        binomial_exact(3, 4)
    with pytest.raises(DomainError):
        binomial_exact(3, -1)


def test_bisection_finds_simple_root():
    result = find_root_bisection(lambda x: x * x - 2.0, 0.0, 2.0)
    assert isinstance(result, BracketedRoot)
    assert result.root == pytest.approx(math.sqrt(2.0), abs=1e-11)
    assert abs(result.residual) <= 1e-10
    lo, hi = result.bracket
    assert lo <= result.root <= hi


def test_bisection_detects_exact_endpoint_root():
    result = find_root_bisection(lambda x: x - 1.0, 1.0, 3.0)
    assert result.root == 1.0
    assert result.residual == 0.0


def test_bisection_rejects_same_sign_bracket():
    with pytest.raises(NoSignChangeError):
        find_root_bisection(lambda x: x * x + 1.0, -1.0, 1.0)


def test_bisection_rejects_bad_bracket_and_tolerance():
    with pytest.raises(DomainError):
        find_root_bisection(lambda x: x, 2.0, 1.0)
    with pytest.raises(DomainError):
        find_root_bisection(lambda x: x, -1.0, 1.0, tol=0.0)


def test_real_polynomial_trims_and_evaluates():
    p = RealPolynomial([1.0, -3.0, 2.0, 0.0, 0.0])
    assert p.coefficients == (1.0, -3.0, 2.0)
    assert p.degree == 2
    # roots of 2x^2 - 3x + 1 are 1/2 and 1
    assert p.evaluate(0.5) == pytest.approx(0.0, abs=1e-15)
    assert p.evaluate(1.0) == pytest.approx(0.0, abs=1e-15)
    xs = np.array([0.0, 0.5, 1.0, 2.0])
    np.testing.assert_allclose(
        p.evaluate_many(xs), [p.evaluate(float(x)) for x in xs], atol=1e-14
    )


def test_real_polynomial_zero_handling():
    z = RealPolynomial([0.0, 0.0])
    assert z.is_zero()
    assert z.degree == 0
    with pytest.raises(DomainError):
        smallest_positive_root(z, 1.0)


def test_smallest_positive_root_picks_leftmost():
    # (x - 1/2)(x - 1)(x - 3) expanded, constant term first
    p = RealPolynomial([-1.5, 5.0, -4.5, 1.0])
    result = smallest_positive_root(p, 10.0)
    assert result.root == pytest.approx(0.5, abs=1e-10)


def test_smallest_positive_root_handles_tight_root():
    # root at 1e-5, far below the initial grid step of scan_max / 1024
    p = RealPolynomial([-1e-5, 1.0])
    result = smallest_positive_root(p, 10.0)
    assert result.root == pytest.approx(1e-5, rel=1e-8)


def test_smallest_positive_root_reports_missing_root():
    p = RealPolynomial([1.0, 0.0, 1.0])
    with pytest.raises(NoRootFoundError):
        smallest_positive_root(p, 5.0)
    with pytest.raises(DomainError):
        smallest_positive_root(p, -1.0)
