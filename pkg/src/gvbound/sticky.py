"""Rate bounds for binary codes over the sticky-insertion channel.

A sticky insertion duplicates a transmitted bit in place, so it preserves
the run structure of a binary word: a word with r runs stays a word with
r runs, only the run lengths grow.  Words are therefore modelled by their
run-length vectors, the compositions of n into r positive parts, and two
words are confusable under b insertions per word exactly when the L1
distance of their run-length vectors is at most 2b.

This module provides the exact pair-counting machinery (dynamic program
plus enumeration oracle), the closed-form critical point of the pair
generating function, the asymptotic total-ball rate, and the resulting
Gilbert-Varshamov, sphere-packing, and crude lower bounds on code rate,
all in bits per symbol.  Asymptotic parameters are densities: rho = r/n
runs per symbol and beta = b/n insertions per symbol, with L1 radius
density delta = 2*beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import acsv
from .errors import DimensionMismatchError, DomainError, MemoryBudgetError, SizeLimitError
from .numeric import binomial_exact, entropy

__all__ = [
    "Composition",
    "StickyCriticalPoint",
    "PairCountTable",
    "compositions",
    "l1_distance",
    "is_confusable",
    "confusable_bruteforce",
    "pair_count_table",
    "iter_pair_layers",
    "count_pairs_exact",
    "count_pairs_bruteforce",
    "total_ball_exact",
    "pair_generating_denominator",
    "critical_point_closed_form",
    "ball_rate",
    "beta_max",
    "gv_rate",
    "sp_rate",
    "simple_lb_rate",
    "capacity_runs",
]

NEG_INF = float("-inf")

_BRUTEFORCE_PAIR_LIMIT = 10 ** 7
_CONFUSABLE_ENUM_LIMIT = 10 ** 6
_TABLE_CELL_BUDGET = 1 << 26
_ARGMAX_GRID_POINTS = 512


@dataclass(frozen=True)
class Composition:
    """Run-length vector: positive integer parts summing to n."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        cleaned = tuple(int(p) for p in parts)
        if not cleaned:
            raise DomainError("a composition needs at least one part")
        if any(p < 1 for p in cleaned):
            raise DomainError(f"composition parts must be >= 1, got {cleaned}")
        object.__setattr__(self, "parts", cleaned)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)


def compositions(n: int, r: int) -> Iterator[Composition]:
    """All compositions of n into exactly r positive parts."""
    if n < 0 or r < 0:
        raise DomainError(f"n and r must be >= 0, got n={n}, r={r}")
    if r == 0:
        return
    if r == 1:
        if n >= 1:
            yield Composition((n,))
        return
    for first in range(1, n - r + 2):
        for rest in compositions(n - first, r - 1):
            yield Composition((first,) + rest.parts)


def l1_distance(u: Composition, v: Composition) -> int:
    """Sum of coordinate-wise absolute differences of run lengths."""
    if u.r != v.r:
        raise DimensionMismatchError(
            f"compositions have different lengths {u.r} and {v.r}"
        )
    return sum(abs(a - b) for a, b in zip(u.parts, v.parts))


def is_confusable(u: Composition, v: Composition, b: int) -> bool:
    """Whether b insertions per word can map u and v to a common word."""
    if u.n != v.n or u.r != v.r:
        raise DimensionMismatchError(
            f"shape mismatch: ({u.n},{u.r}) vs ({v.n},{v.r})"
        )
    if b < 0:
        raise DomainError(f"insertion budget must be >= 0, got {b}")
    return l1_distance(u, v) <= 2 * b

def _inflations(w: Composition, b: int) -> set[tuple[int, ...]]:
    """All run-length vectors reachable from w by exactly b insertions."""
    out: set[tuple[int, ...]] = set()
    stack = [(w.parts, b, 0)]
    while stack:
        parts, left, start = stack.pop()
        if left == 0:
            out.add(parts)
            continue
        for idx in range(start, len(parts)):
            bumped = parts[:idx] + (parts[idx] + 1,) + parts[idx + 1:]
            stack.append((bumped, left - 1, idx))
    return out


def confusable_bruteforce(u: Composition, v: Composition, b: int) -> bool:
    """Confusability by direct enumeration of all b-fold inflations.

    Distributes b unit run-length increments over u and over v in every
    possible way and reports whether the two reachable sets intersect.
    Serves as the oracle for the L1 criterion of is_confusable.
    """
    if u.n != v.n or u.r != v.r:
        raise DimensionMismatchError(
            f"shape mismatch: ({u.n},{u.r}) vs ({v.n},{v.r})"
        )
    if b < 0:
        raise DomainError(f"insertion budget must be >= 0, got {b}")
    if binomial_exact(b + u.r - 1, u.r - 1) > _CONFUSABLE_ENUM_LIMIT:
        raise SizeLimitError(
            f"enumerating {b} insertions over {u.r} runs is too large"
        )
    return not _inflations(u, b).isdisjoint(_inflations(v, b))


@dataclass(frozen=True)
class PairCountTable:
    """One level of the pair-count dynamic program.

    entries[n1, n2, s] is the number of ordered composition pairs
    (u, v) with u summing to n1, v summing to n2, both with exactly
    `r` parts, at L1 distance exactly s.  In log2 mode entries hold
    log2 counts with -inf marking zero.
    """

    mode: str
    r: int
    n1_max: int
    n2_max: int
    s_max: int
    entries: np.ndarray

    def count(self, n1: int, n2: int, s: int):
        """Table entry, with out-of-range indices counting as zero."""
        zero = 0 if self.mode == "exact" else NEG_INF
        if min(n1, n2, s) < 0:
            return zero
        if n1 > self.n1_max or n2 > self.n2_max or s > self.s_max:
            raise DomainError(
                f"({n1},{n2},{s}) outside table dims "
                f"({self.n1_max},{self.n2_max},{self.s_max})"
            )
        return self.entries[n1, n2, s]

    def total(self, n1: int, n2: int, s_cap: int):
        """Sum of entries over s <= s_cap at fixed (n1, n2)."""
        s_cap = min(s_cap, self.s_max)
        row = self.entries[n1, n2, : s_cap + 1]
        if self.mode == "exact":
            return sum(row.tolist())
        finite = row[row > NEG_INF]
        if finite.size == 0:
            return NEG_INF
        m = float(finite.max())
        return m + math.log2(np.exp2(finite - m).sum())


def _check_table_dims(n1_max: int, n2_max: int, r_max: int, s_max: int, mode: str) -> None:
    if min(n1_max, n2_max, r_max, s_max) < 0:
        raise DomainError("table dimensions must be >= 0")
    if mode not in ("exact", "log2"):
        raise DomainError(f"mode must be 'exact' or 'log2', got {mode!r}")
    cells = (n1_max + 1) * (n2_max + 1) * (s_max + 1)
    if cells > _TABLE_CELL_BUDGET:
        raise MemoryBudgetError(
            f"pair table needs {cells} cells per layer, budget is {_TABLE_CELL_BUDGET}"
        )


def iter_pair_layers(
    n1_max: int, n2_max: int, r_max: int, s_max: int, mode: str = "exact"
) -> Iterator[PairCountTable]:
    """Yield the pair-count table for each r = 1 .. r_max in turn.

    The recursion truncates the last run of each word.  Writing N for
    the level r-1 table, the level r value at (n1, n2, s) is the sum of
    N(n1-a, n2-b, s-|a-b|) over all last-run lengths a, b >= 1.  The
    unbounded sums collapse with two run-shortening prefix tables

        M1(n1, n2, s) = sum_{j>=1} N(n1, n2-j, s-j)
        M2(n1, n2, s) = sum_{j>=1} N(n1-j, n2, s-j)

    and a diagonal prefix A of P = N + M1 + M2, giving O(1) work per
    state; the level r table is exactly A.  Only two levels are live at
    any time, so memory stays at a handful of (n1, n2, s) slabs.
    """
    _check_table_dims(n1_max, n2_max, r_max, s_max, mode)
    exact = mode == "exact"
    shape = (n1_max + 1, n2_max + 1, s_max + 1)

    def blank() -> np.ndarray:
        if exact:
            return np.zeros(shape, dtype=object)
        return np.full(shape, NEG_INF)

    def combine(a, b):
        return a + b if exact else np.logaddexp2(a, b)

    level = blank()
    level[0, 0, 0] = 1 if exact else 0.0
    for r in range(1, r_max + 1):
        m1 = blank()
        for n2 in range(1, n2_max + 1):
            m1[:, n2, 1:] = combine(level[:, n2 - 1, :-1], m1[:, n2 - 1, :-1])
        m2 = blank()
        for n1 in range(1, n1_max + 1):
            m2[n1, :, 1:] = combine(level[n1 - 1, :, :-1], m2[n1 - 1, :, :-1])
        p = combine(level, combine(m1, m2))
        nxt = blank()
        for n1 in range(1, n1_max + 1):
            nxt[n1, 1:, :] = combine(p[n1 - 1, :-1, :], nxt[n1 - 1, :-1, :])
        level = nxt
        yield PairCountTable(
            mode=mode, r=r, n1_max=n1_max, n2_max=n2_max, s_max=s_max, entries=level
        )


def pair_count_table(
    n1_max: int, n2_max: int, r: int, s_max: int, mode: str = "exact"
) -> PairCountTable:
    """Pair-count table at level r (see iter_pair_layers)."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    table = None
    for table in iter_pair_layers(n1_max, n2_max, r, s_max, mode):
        pass
    assert table is not None
    return table


def count_pairs_exact(n1: int, n2: int, r: int, s: int, mode: str = "exact"):
    """Number of ordered pairs in S(n1,r) x S(n2,r) at L1 distance s."""
    if min(n1, n2, r, s) < 0:
        return 0 if mode == "exact" else NEG_INF
    if r == 0:
        hit = n1 == 0 and n2 == 0 and s == 0
        if mode == "exact":
            return 1 if hit else 0
        return 0.0 if hit else NEG_INF
    return pair_count_table(n1, n2, r, s, mode).count(n1, n2, s)


def count_pairs_bruteforce(n1: int, n2: int, r: int, s: int) -> int:
    """Pair count by direct enumeration of both composition sets."""
    if min(n1, n2, r, s) < 0:
        return 0
    if r == 0:
        return 1 if n1 == 0 and n2 == 0 and s == 0 else 0
    if n1 < r or n2 < r:
        return 0
    size1 = binomial_exact(n1 - 1, r - 1)
    size2 = binomial_exact(n2 - 1, r - 1)
    if size1 * size2 > _BRUTEFORCE_PAIR_LIMIT:
        raise SizeLimitError(
            f"{size1 * size2} composition pairs exceed the enumeration limit"
        )
    left = list(compositions(n1, r))
    right = list(compositions(n2, r))
    return sum(1 for u in left for v in right if l1_distance(u, v) == s)


def total_ball_exact(n: int, r: int, d: int, mode: str = "exact"):
    """Ordered pairs in S(n,r) x S(n,r) at L1 distance at most d."""
    if min(n, r, d) < 0:
        raise DomainError(f"arguments must be >= 0, got ({n},{r},{d})")
    if r == 0:
        hit = n == 0
        if mode == "exact":
            return 1 if hit else 0
        return 0.0 if hit else NEG_INF
    s_cap = min(d, 2 * n)
    return pair_count_table(n, n, r, s_cap, mode).total(n, n, s_cap)


@dataclass(frozen=True)
class StickyCriticalPoint:
    """Positive critical point of the pair generating function.

    The two word-length variables share the value x by symmetry; y marks
    the run count and z the L1 distance.  residual_norm is the max-norm
    residual of the full four-variable critical system at the point.
    """

    x: float
    y: float
    z: float
    residual_norm: float


def pair_generating_denominator() -> acsv.SparseMultivariatePolynomial:
    """Denominator of the pair generating function in (x1, x2, y, z).

    Factored form: (1 - x1 x2)(1 - x1 z)(1 - x2 z) - y x1 x2 (1 - x1 x2 z^2).
    """
    return acsv.SparseMultivariatePolynomial(
        4,
        [
            ((0, 0, 0, 0), 1.0),
            ((1, 0, 0, 1), -1.0),
            ((0, 1, 0, 1), -1.0),
            ((1, 1, 0, 2), 1.0),
            ((1, 1, 0, 0), -1.0),
            ((2, 1, 0, 1), 1.0),
            ((1, 2, 0, 1), 1.0),
            ((2, 2, 0, 2), -1.0),
            ((1, 1, 1, 0), -1.0),
            ((2, 2, 1, 2), 1.0),
        ],
    )


def critical_point_closed_form(rho: float, delta: float) -> StickyCriticalPoint:
    """Closed-form critical point at run density rho and radius density delta.

    Valid in the smooth regime 2 - delta - 2*rho > 0 with delta > 0; the
    saturated regime is handled by ball_rate directly.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must be in (0,1), got {rho}")
    if delta <= 0.0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if 2.0 - delta - 2.0 * rho <= 0.0:
        raise DomainError(
            f"point exists only for 2 - delta - 2*rho > 0, got rho={rho}, delta={delta}"
        )
    x = math.sqrt(1.0 - 2.0 * rho / (2.0 - delta))
    root = math.sqrt(rho * rho + delta * delta)
    z = (root - rho) / (x * delta)
    y = 2.0 * (root - delta) / (2.0 - delta - 2.0 * rho)
    residual = acsv.critical_system_residual(
        pair_generating_denominator(), (1.0, 1.0, rho, delta), (x, x, y, z)
    )
    return StickyCriticalPoint(
        x=x, y=y, z=z, residual_norm=float(np.max(np.abs(residual)))
    )


def beta_max(rho: float) -> float:
    """Insertion density at which the total ball saturates."""
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must be in (0,1), got {rho}")
    return (1.0 - rho) / (2.0 - rho)


def ball_rate(rho: float, beta: float) -> float:
    """Asymptotic exponent of the total ball size at radius density 2*beta.

    Piecewise: the entropy H(rho) at beta = 0 (the ball degenerates to
    the diagonal), twice H(rho) once beta reaches beta_max(rho) (the
    ball covers all pairs), and the smooth closed form in between.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must be in (0,1), got {rho}")
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if beta == 0.0:
        return entropy(rho)
    if beta >= beta_max(rho):
        return 2.0 * entropy(rho)
    root = math.hypot(rho, 2.0 * beta)
    # conjugate forms keep the differences positive for extreme rho/beta ratios
    root_minus_2beta = rho * rho / (root + 2.0 * beta)
    root_minus_rho = 4.0 * beta * beta / (root + rho)
    return (
        -rho
        + 2.0 * beta * math.log2(2.0 * beta)
        - rho * math.log2(root_minus_2beta)
        - 2.0 * beta * math.log2(root_minus_rho)
        + (-1.0 + rho + beta) * math.log2(2.0 - 2.0 * rho - 2.0 * beta)
        + (1.0 - beta) * math.log2(2.0 - 2.0 * beta)
    )


def capacity_runs(rho: float) -> float:
    """Exponent of the number of words with run density rho: H(rho)."""
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must be in [0,1], got {rho}")
    return entropy(rho)


def _gv_objective(rho: float, beta: float) -> float:
    return 2.0 * entropy(rho) - ball_rate(rho, beta)


def _gv_closed_form_rho(beta: float) -> float:
    return (3.0 * (1.0 - beta) - math.sqrt(9.0 * beta * beta - 2.0 * beta + 1.0)) / 4.0


def _gv_numeric_argmax(beta: float) -> tuple[float, float]:
    """Grid scan plus local refinement of the rate objective over rho."""
    lo, hi = 1e-9, 1.0 - 1e-9
    grid = np.linspace(lo, hi, _ARGMAX_GRID_POINTS)
    values = np.array([_gv_objective(float(g), beta) for g in grid])
    k = int(values.argmax())
    cell_lo = grid[max(k - 1, 0)]
    cell_hi = grid[min(k + 1, grid.size - 1)]
    result = minimize_scalar(
        lambda rho: -_gv_objective(float(rho), beta),
        bounds=(float(cell_lo), float(cell_hi)),
        method="bounded",
        options={"xatol": 1e-11},
    )
    best_rho = float(result.x)
    best_val = _gv_objective(best_rho, beta)
    if values[k] > best_val:
        best_rho, best_val = float(grid[k]), float(values[k])
    return best_val, best_rho


def gv_rate(beta: float) -> tuple[float, float]:
    """Best Gilbert-Varshamov rate over the run density, with its argmax.

    Evaluates the objective 2*H(rho) - ball_rate(rho, beta) both at the
    closed-form candidate rho = (3(1-beta) - sqrt(9 beta^2 - 2 beta + 1))/4
    and at a numeric argmax over rho in (0,1), and returns the larger
    (the closed form on ties).  Returns (rate, rho_star).
    """
    if not 0.0 <= beta <= 0.5:
        raise DomainError(f"beta must be in [0, 0.5], got {beta}")
    if beta == 0.5:
        return 0.0, 0.0
    rho_cf = _gv_closed_form_rho(beta)
    val_cf = _gv_objective(rho_cf, beta) if 0.0 < rho_cf < 1.0 else NEG_INF
    val_num, rho_num = _gv_numeric_argmax(beta)
    if val_cf >= val_num - 1e-12:
        return max(val_cf, 0.0), rho_cf
    return max(val_num, 0.0), rho_num


def sp_rate(beta: float) -> float:
    """Sphere-packing upper bound on the rate at insertion density beta."""
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    arg = (1.0 + beta) / (1.0 + 2.0 * beta)
    return (1.0 + 2.0 * beta) * (1.0 - entropy(arg))


def simple_lb_rate(beta: float) -> float:
    """Crude lower bound from the coarse ball estimate 2^r * C(d+r-1, r-1).

    The closed form is the bound optimized at run density (1 - 4*beta)/3;
    that density leaves the valid range at beta = 1/4, where the formula
    value reaches zero, so the bound is zero from there on.
    """
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if beta == 0.0:
        return math.log2(3.0) - 1.0
    if beta >= 0.25:
        return 0.0
    return (
        2.0 * beta
        - 1.0
        - (1.0 + 2.0 * beta) * math.log2((1.0 + 2.0 * beta) / 3.0)
        + 2.0 * beta * math.log2(beta)
    )
