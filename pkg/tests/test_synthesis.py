"""Unit tests for the cyclic-synthesis combinatorics and rate bounds."""

import math
import random
from itertools import product

import pytest

from gvbound import synthesis
from gvbound.errors import DimensionMismatchError, DomainError, SizeLimitError
from gvbound.numeric import entropy
from gvbound.synthesis import (
    ALPHABET,
    ball_rate_upper,
    capacity,
    count_pairs_bruteforce,
    count_pairs_exact,
    count_words_by_time,
    count_words_exact,
    critical_point,
    delta_max,
    gv_rate,
    hamming_distance,
    pair_count_table,
    simple_lb_rate,
    synthesis_time,
)


# -------------------------------------------------------------- synthesis time


def test_synthesis_time_examples():
    assert synthesis_time("CTACG") == 7
    assert synthesis_time("AGTA") == 5
    assert synthesis_time("CTT") == 8
    assert synthesis_time("") == 0
    assert synthesis_time("ACGT") == 4
    assert synthesis_time("TTTT") == 16


def test_synthesis_time_bounds_hold_everywhere():
    for n in range(1, 6):
        for letters in product(ALPHABET, repeat=n):
            t = synthesis_time("".join(letters))
            assert n <= t <= 4 * n


def test_synthesis_time_rejects_bad_symbols():
    with pytest.raises(DomainError):
        synthesis_time("ACGX")


def test_hamming_distance():
    assert hamming_distance("ACGT", "ACGT") == 0
    assert hamming_distance("ACGT", "TCGA") == 2
    with pytest.raises(DimensionMismatchError):
        hamming_distance("AC", "ACG")


# ----------------------------------------------------------------- word counts


def test_count_words_exact_small_cases():
    assert count_words_exact(1, 4) == 4
    assert count_words_exact(1, 2) == 2
    assert count_words_exact(2, 8) == 16
    assert count_words_exact(0, 0) == 1


def test_count_words_by_time_matches_enumeration():
    for n in range(1, 6):
        counts = count_words_by_time(n)
        assert len(counts) == 4 * n + 1
        observed = [0] * (4 * n + 1)
        for letters in product(ALPHABET, repeat=n):
            observed[synthesis_time("".join(letters))] += 1
        assert counts == observed


def test_count_words_mass_identity():
    for n in (10, 20, 30):
        assert sum(count_words_by_time(n)) == 4**n


# ----------------------------------------------------------------- pair counts


def test_count_pairs_exact_small_cases():
    assert count_pairs_exact(1, 2, 0) == 1
    assert count_pairs_exact(1, 5, 1) == 4
    total = sum(
        count_pairs_exact(1, t, s) for t in range(0, 9) for s in range(0, 2)
    )
    assert total == 16
    assert count_pairs_exact(0, 0, 0) == 1


def test_count_pairs_bruteforce_small_cases():
    assert count_pairs_bruteforce(2, 4, 0) == 1
    with pytest.raises(SizeLimitError):
        count_pairs_bruteforce(7, 20, 3)


def test_pair_counts_match_bruteforce_up_to_n4():
    for n in range(0, 5):
        table = pair_count_table(n)
        for t in range(0, 8 * n + 1):
            for s in range(0, n + 1):
                assert table.count(t, s) == count_pairs_bruteforce(n, t, s), (n, t, s)


def test_pair_mass_identity():
    for n in (8, 14, 20):
        table = pair_count_table(n)
        assert table.total(8 * n, n) == 16**n


def test_log_mode_tracks_exact_counts():
    n = 6
    exact = pair_count_table(n, "exact")
    logs = pair_count_table(n, "log2")
    for t in range(0, 8 * n + 1):
        for s in range(0, n + 1):
            count = exact.count(t, s)
            if count == 0:
                assert logs.count(t, s) == -math.inf
            else:
                assert logs.count(t, s) == pytest.approx(math.log2(count), abs=1e-9)


def test_table_count_bounds():
    # any bucket outside the structural ranges t <= 8n, s <= n is empty
    table = pair_count_table(3)
    assert table.count(-1, 0) == 0
    assert table.count(0, -1) == 0
    assert table.count(25, 0) == 0
    assert table.count(0, 4) == 0
    # the unique slowest pair is the all-T strand against itself
    assert table.count(24, 0) == 1


# -------------------------------------------------------------------- capacity


def test_capacity_anchor_values():
    assert capacity(2.5) == pytest.approx(2.0, abs=1e-15)
    assert capacity(4.0) == 2.0
    assert capacity(1.5) == pytest.approx(1.356343561746467, abs=1e-12)
    assert capacity(2.0) == pytest.approx(1.8522859940752379, abs=1e-12)
    assert capacity(2.25) == pytest.approx(1.9637256518458055, abs=1e-12)


def test_capacity_monotone_nondecreasing():
    values = [capacity(1.0 + 0.05 * k) for k in range(1, 40)]
    for a, b in zip(values, values[1:]):
        assert b >= a - 1e-12


def test_capacity_matches_counting():
    n = 100
    count = count_words_exact(n, 2 * n)
    assert abs(math.log2(count) / n - capacity(2.0)) <= 0.1


def test_capacity_rejects_trivial_budget():
    with pytest.raises(DomainError):
        capacity(1.0)
    with pytest.raises(DomainError):
        capacity(0.5)


# -------------------------------------------------------------- critical point


def test_critical_point_known_values():
    cp = critical_point(2.0, 0.1)
    assert cp.x == pytest.approx(0.6154638681151996, abs=1e-12)
    assert cp.y == pytest.approx(0.797626472469517, abs=1e-12)
    assert cp.z == pytest.approx(0.04020121870895154, abs=1e-12)
    assert cp.residual_norm <= 1e-9


def test_critical_point_residuals_on_grid():
    for tau in (1.5, 2.0):
        dm, _ = delta_max(tau)
        delta = 0.05
        while delta < dm:
            cp = critical_point(tau, delta)
            assert cp.residual_norm <= 1e-9, (tau, delta)
            delta += 0.05


def test_critical_point_rejects_out_of_range():
    with pytest.raises(DomainError):
        critical_point(2.0, 0.0)
    with pytest.raises(DomainError):
        critical_point(2.0, 1.0)
    with pytest.raises(DomainError):
        critical_point(1.0, 0.1)


def test_critical_point_time_mark_hits_one_at_full_budget():
    # at tau = 5/2 the cycle budget stops binding and the time variable
    # lands exactly on the unit circle
    assert critical_point(2.5, 0.1).y == pytest.approx(1.0, abs=1e-9)


def test_critical_point_distance_mark_crosses_one_at_saturation():
    # below delta_max the distance variable sits inside the unit circle,
    # above it the algebraic point continues with z > 1
    dm, _ = delta_max(2.0)
    assert critical_point(2.0, dm - 0.01).z < 1.0
    assert critical_point(2.0, dm + 0.01).z > 1.0


def test_delta_max_values():
    known = {
        1.5: 0.5165884174655024,
        1.75: 0.6282019197843406,
        2.0: 0.698304126368074,
        2.25: 0.7373985767967745,
    }
    for tau, expected in known.items():
        dm, _ = delta_max(tau)
        assert dm == pytest.approx(expected, abs=1e-9)
    values = [delta_max(tau)[0] for tau in (1.5, 1.75, 2.0, 2.25)]
    for a, b in zip(values, values[1:]):
        assert b > a


def test_delta_max_root_matches_capacity_root():
    # the distance mark leaves the picture exactly when the remaining
    # one-word system degenerates to the capacity equation
    for tau in (1.5, 2.0, 2.25):
        dm, y_min = delta_max(tau)
        cp = critical_point(tau, dm - 1e-9)
        assert abs(cp.z - 1.0) <= 1e-6
        assert ball_rate_upper(tau, dm) == pytest.approx(
            2.0 * capacity(tau), abs=1e-9
        )


# ----------------------------------------------------------------- rate curves


def test_ball_rate_upper_saturated_time_branch():
    # with tau >= 5/2 every word is producible and the count is a plain
    # Hamming ball over the quaternary alphabet
    assert ball_rate_upper(3.0, 0.5) == pytest.approx(
        2.0 + entropy(0.5) + 0.5 * math.log2(3.0), abs=1e-12
    )
    assert ball_rate_upper(3.0, 0.75) == pytest.approx(4.0, abs=1e-12)
    assert ball_rate_upper(3.0, 0.9) == 4.0
    assert ball_rate_upper(2.5, 0.0) == pytest.approx(2.0, abs=1e-12)


def test_ball_rate_upper_time_limited_branch():
    assert ball_rate_upper(2.0, 0.0) == pytest.approx(capacity(2.0), abs=1e-12)
    dm, _ = delta_max(2.0)
    assert ball_rate_upper(2.0, 0.73) == pytest.approx(
        2.0 * capacity(2.0), abs=1e-12
    )
    mid = ball_rate_upper(2.0, 0.3)
    assert capacity(2.0) < mid < 2.0 * capacity(2.0)


def test_ball_rate_upper_continuous_at_knee():
    for tau in (1.5, 2.0, 2.25):
        dm, _ = delta_max(tau)
        below = ball_rate_upper(tau, dm - 1e-9)
        above = ball_rate_upper(tau, dm + 1e-9)
        assert abs(below - above) <= 1e-6


def test_gv_rate_values():
    assert gv_rate(2.0, 0.1) == pytest.approx(1.235797150628474, abs=1e-10)
    assert gv_rate(2.0, 0.3) == pytest.approx(0.5343209657080084, abs=1e-10)
    dm, _ = delta_max(2.0)
    assert gv_rate(2.0, dm) == 0.0
    assert gv_rate(2.0, 0.74) == 0.0


def test_gv_rate_dominates_simple_lb():
    for tau in (1.5, 2.0):
        for k in range(0, 15):
            delta = 0.05 * k
            assert gv_rate(tau, delta) >= simple_lb_rate(tau, delta) - 1e-9


def test_simple_lb_rate_values():
    assert simple_lb_rate(2.0, 0.0) == pytest.approx(capacity(2.0), abs=1e-15)
    assert simple_lb_rate(2.0, 0.1) == pytest.approx(1.2247941504138409, abs=1e-12)
    assert simple_lb_rate(3.0, 0.75) == 0.0
