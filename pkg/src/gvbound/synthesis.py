"""Rate bounds for DNA codes under a synthesis-cycle budget.

Strands are synthesized as subsequences of the alternating supersequence
ACGTACGT...: each machine cycle offers one nucleotide, and a strand
consumes the cycles at which its symbols appear.  Appending a symbol
therefore costs the cyclic gap from the previous symbol in the order
A < C < G < T (with a virtual start, so the first symbol A, C, G, T
costs 1, 2, 3, 4 cycles).  The synthesis time of a strand is the cycle
index of its last symbol, and a budget of tau * n cycles constrains the
set of producible length-n strands.

This module provides exact word and pair counting under the budget, the
capacity of the constrained space, the critical point of the pair
generating function, the piecewise upper bound on the total-ball rate,
and the resulting Gilbert-Varshamov and crude lower bounds on code rate
at Hamming distance density delta, all in bits per symbol.

The pair counts track the combined synthesis time t of both words, so
the resulting ball rate is an upper bound: pairs where one word exceeds
the budget while the sum does not are included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import acsv
from .errors import DimensionMismatchError, DomainError, MemoryBudgetError, SizeLimitError
from .numeric import RealPolynomial, entropy, smallest_positive_root

__all__ = [
    "ALPHABET",
    "Strand",
    "SynthesisCriticalPoint",
    "SynthesisPairTable",
    "synthesis_time",
    "hamming_distance",
    "count_words_by_time",
    "count_words_exact",
    "pair_count_table",
    "count_pairs_exact",
    "count_pairs_bruteforce",
    "pair_generating_denominator",
    "capacity",
    "critical_point",
    "delta_max",
    "ball_rate_upper",
    "gv_rate",
    "simple_lb_rate",
]

NEG_INF = float("-inf")

ALPHABET = "ACGT"
_RANK = {"A": 1, "C": 2, "G": 3, "T": 4}

LOG2_3 = math.log2(3.0)

_BRUTEFORCE_WORD_LIMIT = 4096
_TABLE_CELL_BUDGET = 1 << 26
_ROOT_SCAN_MAX = 10.0

Strand = str


def _check_strand(w: Strand) -> str:
    bad = set(w) - set(ALPHABET)
    if bad:
        raise DomainError(f"strand contains symbols outside ACGT: {sorted(bad)}")
    return w


def synthesis_time(w: Strand) -> int:
    """Cycle index at which the last symbol of w is synthesized.

    Each step costs the cyclic distance from the previous symbol in the
    order A < C < G < T, between 1 (the cyclic successor) and 4 (the
    same symbol again); the first symbol costs its own rank.  The empty
    strand takes no cycles.
    """
    _check_strand(w)
    if not w:
        return 0
    total = _RANK[w[0]]
    for prev, cur in zip(w, w[1:]):
        total += ((_RANK[cur] - _RANK[prev] - 1) % 4) + 1
    return total


def hamming_distance(u: Strand, v: Strand) -> int:
    """Number of positions where the two strands differ."""
    if len(u) != len(v):
        raise DimensionMismatchError(
            f"strands have different lengths {len(u)} and {len(v)}"
        )
    return sum(a != b for a, b in zip(u, v))


def count_words_by_time(n: int) -> list[int]:
    """Exact number of length-n strands at each synthesis time.

    Entry t of the returned list counts strands with synthesis time
    exactly t; the list has length 4n + 1 (times range from n to 4n).
    The step costs relative to the previous symbol are a bijection onto
    {1,2,3,4} per position, so the count only depends on the cost sums.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    counts = [1] + [0] * (4 * n)
    for _ in range(n):
        nxt = [0] * len(counts)
        for t, c in enumerate(counts):
            if c == 0:
                continue
            for cost in range(1, 5):
                if t + cost < len(nxt):
                    nxt[t + cost] += c
        counts = nxt
    return counts


def count_words_exact(n: int, t_max: int) -> int:
    """Number of length-n strands with synthesis time at most t_max."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    by_time = count_words_by_time(n)
    return sum(by_time[: max(t_max + 1, 0)])


@dataclass(frozen=True)
class SynthesisPairTable:
    """Pair counts at one strand length, resolved by combined time.

    entries[d, t, s] counts ordered strand pairs (u, v) of length n with
    synthesis_time(u) + synthesis_time(v) = t, Hamming distance s, and
    rank(u_n) - rank(v_n) = d (mod 4).  The d axis is an internal state
    of the recursion: Hamming agreement at a position depends on the
    rank difference carried from the previous position, not only on the
    two step costs, so the counts split by it.  Public queries sum it
    out.  In log2 mode entries hold log2 counts with -inf for zero.
    """

    mode: str
    n: int
    entries: np.ndarray

    def count(self, t: int, s: int):
        """Pairs at combined time t and distance s (d summed out)."""
        zero = 0 if self.mode == "exact" else NEG_INF
        if t < 0 or s < 0:
            return zero
        if t >= self.entries.shape[1] or s >= self.entries.shape[2]:
            return zero
        col = self.entries[:, t, s]
        if self.mode == "exact":
            return sum(col.tolist())
        finite = col[col > NEG_INF]
        if finite.size == 0:
            return NEG_INF
        m = float(finite.max())
        return m + math.log2(np.exp2(finite - m).sum())

    def total(self, t_cap: int, s_cap: int):
        """Pairs with combined time <= t_cap and distance <= s_cap."""
        t_cap = min(t_cap, self.entries.shape[1] - 1)
        s_cap = min(s_cap, self.entries.shape[2] - 1)
        if t_cap < 0 or s_cap < 0:
            return 0 if self.mode == "exact" else NEG_INF
        block = self.entries[:, : t_cap + 1, : s_cap + 1]
        if self.mode == "exact":
            return sum(block.reshape(-1).tolist())
        finite = block[block > NEG_INF]
        if finite.size == 0:
            return NEG_INF
        m = float(finite.max())
        return m + math.log2(np.exp2(finite - m).sum())


def pair_count_table(n: int, mode: str = "exact") -> SynthesisPairTable:
    """Build the pair-count table for strand length n.

    Appends one position to both words at a time.  A position appends
    step costs (a, b) in {1..4}^2, adds a + b to the combined time, and
    moves the rank difference from d to d + a - b (mod 4); the position
    matches exactly when the new difference is 0.  This is 16 constant
    transitions per state.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if mode not in ("exact", "log2"):
        raise DomainError(f"mode must be 'exact' or 'log2', got {mode!r}")
    t_dim, s_dim = 8 * n + 1, n + 1
    if 4 * t_dim * s_dim > _TABLE_CELL_BUDGET:
        raise MemoryBudgetError(
            f"pair table needs {4 * t_dim * s_dim} cells per layer, "
            f"budget is {_TABLE_CELL_BUDGET}"
        )
    exact = mode == "exact"
    shape = (4, t_dim, s_dim)
    if exact:
        level = np.zeros(shape, dtype=object)
        level[0, 0, 0] = 1
    else:
        level = np.full(shape, NEG_INF)
        level[0, 0, 0] = 0.0
    for _ in range(n):
        nxt = np.zeros(shape, dtype=object) if exact else np.full(shape, NEG_INF)
        for a in range(1, 5):
            for b in range(1, 5):
                w = a + b
                for d in range(4):
                    nd = (d + a - b) % 4
                    if nd == 0:
                        src = level[d, : t_dim - w, :]
                        dst = nxt[nd, w:, :]
                    else:
                        src = level[d, : t_dim - w, :-1]
                        dst = nxt[nd, w:, 1:]
                    if exact:
                        dst += src
                    else:
                        np.logaddexp2(dst, src, out=dst)
        level = nxt
    return SynthesisPairTable(mode=mode, n=n, entries=level)


def count_pairs_exact(n: int, t: int, s: int, mode: str = "exact"):
    """Ordered strand pairs at combined time t and Hamming distance s."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return pair_count_table(n, mode).count(t, s)


def count_pairs_bruteforce(n: int, t: int, s: int) -> int:
    """Pair count by enumeration of all length-n strand pairs."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if 4 ** n > _BRUTEFORCE_WORD_LIMIT:
        raise SizeLimitError(f"4^{n} strands exceed the enumeration limit")
    if n == 0:
        return 1 if t == 0 and s == 0 else 0
    strands = [""]
    for _ in range(n):
        strands = [w + c for w in strands for c in ALPHABET]
    words = [(w, synthesis_time(w)) for w in strands]
    return sum(
        1
        for u, tu in words
        for v, tv in words
        if tu + tv == t and hamming_distance(u, v) == s
    )


@dataclass(frozen=True)
class SynthesisCriticalPoint:
    """Positive critical point of the pair generating function.

    x marks strand length, y one cycle of combined synthesis time, z one
    Hamming mismatch.  residual_norm is the max-norm residual of the
    three-variable critical system at the point.
    """

    x: float
    y: float
    z: float
    residual_norm: float


def pair_generating_denominator() -> acsv.SparseMultivariatePolynomial:
    """Denominator of the pair generating function in (x, y, z).

    Factored form: 1 - x y^2 (1 + y^2) ((1 + y^4) + 2 z y (1 + y + y^2)).
    """
    return acsv.SparseMultivariatePolynomial(
        3,
        [
            ((0, 0, 0), 1.0),
            ((1, 2, 0), -1.0),
            ((1, 4, 0), -1.0),
            ((1, 6, 0), -1.0),
            ((1, 8, 0), -1.0),
            ((1, 3, 1), -2.0),
            ((1, 4, 1), -2.0),
            ((1, 5, 1), -4.0),
            ((1, 6, 1), -2.0),
            ((1, 7, 1), -2.0),
        ],
    )


def _conv(a: list[float], b: list[float]) -> list[float]:
    out = [0.0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out

# Shared coefficient blocks of the critical-point equations, ascending in y.
_POLY_G = _conv([1, 0, 1], [1, 0, 0, 0, 1])          # (1+y^2)(1+y^4)
_POLY_A = _conv(_POLY_G, [1, 1, 1])                  # (1+y^2)(1+y^4)(1+y+y^2)
_POLY_B = _conv([1, 1, 1], [1, 0, 2, 0, 3, 0, 4])    # (1+y+y^2)(1+2y^2+3y^4+4y^6)
_POLY_B0 = [1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0]       # 1+2y^2+3y^4+4y^6
_POLY_C = _conv([1, 0, 0, 0, -1], [1, 2, 4, 2, 1])   # (1-y^4)(1+2y+4y^2+2y^3+y^4)
_POLY_D = [1.0, 2.0, 2.0, 2.0, 1.0]                  # (1+y^4)+2y(1+y+y^2)


def _poly_eval(coeffs: list[float], y: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


@lru_cache(maxsize=None)
def capacity(tau: float) -> float:
    """Exponent of the number of strands producible in tau cycles per symbol.

    Below tau = 5/2 the rate is set by the positive root of the cubic
    (4-tau) y^3 + (3-tau) y^2 + (2-tau) y + (1-tau); from 5/2 on every
    strand is producible and the rate is the full 2 bits.
    """
    if tau <= 1.0:
        raise DomainError(f"tau must be > 1, got {tau}")
    if tau >= 2.5:
        return 2.0
    cubic = RealPolynomial([1.0 - tau, 2.0 - tau, 3.0 - tau, 4.0 - tau])
    y = smallest_positive_root(cubic, _ROOT_SCAN_MAX).root
    x = 1.0 / (y + y ** 2 + y ** 3 + y ** 4)
    return -math.log2(x) - tau * math.log2(y)


def critical_point(tau: float, delta: float) -> SynthesisCriticalPoint:
    """Critical point at cycle density tau and distance density delta.

    The y coordinate is the smallest positive root of the defining
    equation cleared to a single polynomial; x and z follow in closed
    form.  Valid for 0 < delta < 1.
    """
    if tau <= 1.0:
        raise DomainError(f"tau must be > 1, got {tau}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must be in (0,1), got {delta}")
    coeffs = [
        2.0 * tau * a - 2.0 * b - delta * c
        for a, b, c in zip(_POLY_A, _POLY_B, _POLY_C)
    ]
    y = smallest_positive_root(RealPolynomial(coeffs), _ROOT_SCAN_MAX).root
    x = (1.0 - delta) / (y ** 2 * (1.0 + y ** 2) * (1.0 + y ** 4))
    z = delta * (1.0 + y ** 4) / (2.0 * (1.0 - delta) * y * (1.0 + y + y ** 2))
    residual = acsv.critical_system_residual(
        pair_generating_denominator(), (1.0, 2.0 * tau, delta), (x, y, z)
    )
    return SynthesisCriticalPoint(
        x=x, y=y, z=z, residual_norm=float(np.max(np.abs(residual)))
    )


@lru_cache(maxsize=None)
def delta_max(tau: float) -> tuple[float, float]:
    """Distance density where the ball rate saturates, with its y root.

    Solves for the smallest positive y at which the z coordinate of the
    critical point reaches 1, then reads the saturating delta from
    delta = 2 y (1 + y + y^2) / ((1 + y^4) + 2 y (1 + y + y^2)).
    Returns (delta_max, y_min).
    """
    if not 1.0 < tau < 2.5:
        raise DomainError(f"tau must be in (1, 2.5), got {tau}")
    tg_minus_b = [tau * g - b for g, b in zip(_POLY_G, _POLY_B0)]
    lhs = _conv(_POLY_D, tg_minus_b)
    rhs = [0.0] + _POLY_C
    coeffs = [l - r for l, r in zip(lhs, rhs + [0.0] * (len(lhs) - len(rhs)))]
    y = smallest_positive_root(RealPolynomial(coeffs), _ROOT_SCAN_MAX).root
    dm = 2.0 * y * (1.0 + y + y ** 2) / _poly_eval(_POLY_D, y)
    return dm, y


def ball_rate_upper(tau: float, delta: float) -> float:
    """Upper bound on the exponent of the total ball size.

    Piecewise in (tau, delta).  For tau >= 5/2 the space is unconstrained
    and the bound is the quaternary Hamming-ball exponent 2 + H(delta) +
    delta*log2(3), capped at 4 from delta = 3/4 on.  For tau < 5/2 the
    bound follows the critical point until the saturating density
    delta_max, where it reaches twice the capacity and stays there.  At
    delta = 0 only the diagonal pairs remain and the value is the
    capacity itself.
    """
    if tau <= 1.0:
        raise DomainError(f"tau must be > 1, got {tau}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must be in [0,1], got {delta}")
    if tau >= 2.5:
        if delta >= 0.75:
            return 4.0
        return 2.0 + entropy(delta) + delta * LOG2_3
    if delta == 0.0:
        return capacity(tau)
    dm, _ = delta_max(tau)
    if delta >= dm:
        return 2.0 * capacity(tau)
    cp = critical_point(tau, delta)
    return (
        -math.log2(cp.x) - 2.0 * tau * math.log2(cp.y) - delta * math.log2(cp.z)
    )


def gv_rate(tau: float, delta: float) -> float:
    """Gilbert-Varshamov lower bound 2*Cap - ball rate, floored at zero."""
    if tau <= 1.0:
        raise DomainError(f"tau must be > 1, got {tau}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must be in [0,1], got {delta}")
    return max(2.0 * capacity(tau) - ball_rate_upper(tau, delta), 0.0)


def simple_lb_rate(tau: float, delta: float) -> float:
    """Crude lower bound Cap - H(delta) - delta*log2(3), floored at zero.

    Uses the coarse ball estimate C(n, d) * 3^d, which is meaningful for
    delta up to 3/4.
    """
    if tau <= 1.0:
        raise DomainError(f"tau must be > 1, got {tau}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must be in [0,1], got {delta}")
    return max(capacity(tau) - entropy(delta) - delta * LOG2_3, 0.0)
