"""Shared numeric primitives: entropy, exact binomials, 1-D root finding.

Probabilities and densities are plain floats validated at the boundary
(a value in [0, 1]); counts are arbitrary-precision Python integers.
All logarithms are base 2, so every rate in the package is measured in
bits per symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, NoRootFoundError, NoSignChangeError, NonConvergenceError

__all__ = [
    "DEFAULT_ROOT_TOL",
    "BracketedRoot",
    "RealPolynomial",
    "entropy",
    "binomial_exact",
    "find_root_bisection",
    "smallest_positive_root",
]

DEFAULT_ROOT_TOL = 1e-12

_BISECTION_MAX_ITER = 200
_SCAN_INITIAL_CELLS = 1024
_SCAN_EVAL_BUDGET = 1 << 21


def entropy(p: float) -> float:
    """Binary entropy H(p) = -p log2 p - (1-p) log2 (1-p) in bits.

    Uses the convention 0 * log2(0) = 0, so H(0) = H(1) = 0.

    Raises:
        DomainError: if p lies outside [0, 1].
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"entropy argument must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def binomial_exact(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) as an arbitrary-precision integer.

    Raises:
        DomainError: if n < 0, k < 0, or k > n.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial_exact requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


@dataclass(frozen=True)
class BracketedRoot:
    """A root of a scalar function together with its final bracket.

    Attributes:
        root: the located root.
        residual: function value at the root.
        bracket: (lo, hi) interval containing the root.
    """

    root: float
    residual: float
    bracket: tuple[float, float]


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial with coefficients stored constant term first.

    Trailing zero coefficients are trimmed on construction so the leading
    coefficient is nonzero unless the polynomial is identically zero.
    """

    coefficients: tuple[float, ...]

    def __init__(self, coefficients: Sequence[float]):
        coeffs = [float(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0.0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0.0,)

    def evaluate(self, x: float) -> float:
        """Evaluate the polynomial at x by Horner's rule."""
        value = 0.0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        return npoly.polyval(xs, np.asarray(self.coefficients))


def find_root_bisection(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_ROOT_TOL,
) -> BracketedRoot:
    """Bisect a sign-changing bracket [lo, hi] down to a root of f.

    The returned root satisfies both |f(root)| <= tol and bracket width
    <= tol (the bracket may collapse to adjacent floats first when f is
    steep; the residual condition still decides success).

    Raises:
        NoSignChangeError: if f(lo) and f(hi) have the same sign.
        NonConvergenceError: if the tolerance is unreachable in the
            iteration budget.
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if not lo < hi:
        raise DomainError(f"bracket endpoints must satisfy lo < hi, got [{lo}, {hi}]")
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return BracketedRoot(root=lo, residual=0.0, bracket=(lo, hi))
    if f_hi == 0.0:
        return BracketedRoot(root=hi, residual=0.0, bracket=(lo, hi))
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSignChangeError(
            f"f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign"
        )
    best_x, best_f = (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)
    for _ in range(_BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if abs(f_mid) < abs(best_f):
            best_x, best_f = mid, f_mid
        if f_mid == 0.0:
            return BracketedRoot(root=mid, residual=0.0, bracket=(lo, hi))
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo <= tol and abs(best_f) <= tol:
            return BracketedRoot(root=best_x, residual=best_f, bracket=(lo, hi))
    if abs(best_f) <= tol:
        return BracketedRoot(root=best_x, residual=best_f, bracket=(lo, hi))
    raise NonConvergenceError(
        f"bisection stalled at bracket [{lo}, {hi}] with residual {best_f}"
    )


def _sign_at_zero_plus(p: RealPolynomial) -> float:
    """Sign of p immediately to the right of 0 (sign of lowest nonzero coefficient)."""
    for c in p.coefficients:
        if c != 0.0:
            return math.copysign(1.0, c)
    return 0.0


def smallest_positive_root(
    p: RealPolynomial,
    scan_max: float,
    tol: float = DEFAULT_ROOT_TOL,
) -> BracketedRoot:
    """Smallest positive real root of p on (0, scan_max].

    Scans the interval on a uniform grid (initial step scan_max / 1024),
    bisects the leftmost sign change, and halves the step when no sign
    change is visible, until the evaluation budget is exhausted.

    Raises:
        NoRootFoundError: if no sign change is detected at the finest
            grid level.
        DomainError: for a zero polynomial or nonpositive scan_max.
    """
    if p.is_zero():
        raise DomainError("smallest_positive_root requires a nonzero polynomial")
    if scan_max <= 0.0:
        raise DomainError(f"scan_max must be positive, got {scan_max}")
    sign_left = _sign_at_zero_plus(p)
    cells = _SCAN_INITIAL_CELLS
    evaluations = 0
    while evaluations + cells <= _SCAN_EVAL_BUDGET:
        xs = np.linspace(0.0, scan_max, cells + 1)[1:]
        values = p.evaluate_many(xs)
        evaluations += cells
        signs = np.sign(values)
        if signs[0] != 0.0 and sign_left != 0.0 and signs[0] != sign_left:
            # a root hides between 0 and the first grid point
            hi_edge = float(xs[0])
            lo_edge = hi_edge
            for _ in range(80):
                lo_edge *= 0.5
                if math.copysign(1.0, p.evaluate(lo_edge)) == sign_left:
                    return find_root_bisection(p.evaluate, lo_edge, hi_edge, tol)
        exact = np.flatnonzero(signs == 0.0)
        change = np.flatnonzero(signs[:-1] * signs[1:] < 0.0)
        first_change = int(change[0]) if change.size else None
        if exact.size and (first_change is None or int(exact[0]) <= first_change):
            idx = int(exact[0])
            lo = float(xs[idx - 1]) if idx > 0 else 0.0
            hi = float(xs[idx + 1]) if idx + 1 < xs.size else scan_max
            return BracketedRoot(root=float(xs[idx]), residual=0.0, bracket=(lo, hi))
        if first_change is not None:
            lo = float(xs[first_change])
            hi = float(xs[first_change + 1])
            return find_root_bisection(p.evaluate, lo, hi, tol)
        cells *= 2
    raise NoRootFoundError(
        f"no sign change of the polynomial found on (0, {scan_max}] "
        f"down to grid step {scan_max / cells:.3e}"
    )
