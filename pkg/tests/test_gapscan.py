import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_pairs, naive_color_three, naive_color_two, naive_gk, pairwise_sdf
from pgap import gapscan
from pgap.errors import DomainError, InsufficientTableError
from pgap.sieve import primes_up_to

PRIMES = primes_up_to(20_000).primes.tolist()


def colour_map(report):
    return dict(report.rows())


def test_gk_examples(small_table):
    assert gapscan.g_k(small_table, 30, 1) == 6
    assert gapscan.g_k(small_table, 30, 2) == 4
    assert gapscan.g_k(small_table, 5, 1) == 2


def test_gk_errors(small_table):
    with pytest.raises(DomainError):
        gapscan.g_k(small_table, 5, 3)
    with pytest.raises(DomainError):
        gapscan.g_k(small_table, 100, 0)
    with pytest.raises(InsufficientTableError):
        gapscan.g_k(small_table, small_table.limit + 1, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(13, 20_000), st.integers(1, 5))
def test_gk_matches_naive(x, k):
    t = primes_up_to(20_000)
    assert gapscan.g_k(t, x, k) == naive_gk(PRIMES, x, k)


def test_color_two_examples(table):
    rep = gapscan.color_two(table, 30, 2)
    cm = colour_map(rep)
    assert sorted(p for p, c in cm.items() if c == "red") == [2, 3, 5, 11, 17, 29]
    assert sorted(p for p, c in cm.items() if c == "green") == [7, 13, 19, 23]
    assert gapscan.color_two(table, 30, 0.5).counts == {"green": 10, "red": 0}
    assert gapscan.color_two(table, 30, 6).counts == {"green": 0, "red": 10}


@pytest.mark.parametrize("x, r", [(100, 2), (1000, 4), (10_000, 6.5), (15_000, 12)])
def test_color_two_matches_naive(table, x, r):
    assert colour_map(gapscan.color_two(table, x, r)) == naive_color_two(PRIMES, x, r)


def test_color_two_monotone_in_r(table):
    prev = None
    for r in (0, 2, 4, 6, 8, 14, 30):
        red = gapscan.color_two(table, 10**5, r).colors == gapscan.RED
        if prev is not None:
            assert not np.any(prev & ~red)
        prev = red


def test_color_two_last_prime_in_table():
    t = primes_up_to(31)
    assert colour_map(gapscan.color_two(t, 31, 0))[31] == "green"
    with pytest.raises(InsufficientTableError):
        gapscan.color_two(t, 30, 2)
    with pytest.raises(DomainError):
        gapscan.color_two(t, 20, -1)


def test_report_runs_and_intervals(table):
    rep = gapscan.color_two(table, 30, 2)
    assert rep.longest_green_run == (8, 2)  # 19, 23
    assert rep.to_json()["longest_green_run"]["primes"] == [19, 23]
    assert (rep.red_intervals, rep.green_intervals, rep.starts_red) == (4, 3, True)
    none = gapscan.color_two(table, 30, 6)
    assert none.longest_green_run == (0, 0)
    assert none.to_json()["longest_green_run"]["primes"] == []


def test_red_green_report(table):
    rep = gapscan.red_green_report(table, 10**6, 2)
    lx = math.log(10**6)
    r = 0.1504 * lx / 2
    assert rep["r"] == pytest.approx(r)
    assert rep["red_ceiling"] == pytest.approx(6.646 * r * 10**6 / lx**2)
    assert rep["red"] + rep["green"] == rep["pi_x"] == 78498
    assert rep["red"] <= rep["pi_x"]
    assert rep["k_in_assumed_range"] is False
    assert rep["red"] == 1  # only 2 -> 3 has a gap <= 1.04
    with pytest.raises(DomainError):
        gapscan.red_green_report(table, 10**6, 1)


def test_green_start_noted():
    t = primes_up_to(200)
    # r < 1 colours every prime green, so the scan cannot start red
    assert "note" in gapscan.red_green_report(t, 100, 20)


def test_square_diff_pairs_examples(table):
    assert gapscan.square_diff_pairs(table, 0, 12) == [(2, 3), (2, 11), (3, 7), (7, 11)]
    assert gapscan.square_diff_pairs(table, 2, 12) == [(3, 7), (7, 11)]
    assert gapscan.square_diff_pairs(table, 0, 2) == []
    assert gapscan.square_diff_pairs(table, 50, 10) == []


@pytest.mark.parametrize("M, N", [(0, 500), (100, 2000), (1000, 3000), (0, 3)])
def test_square_diff_pairs_brute(table, M, N):
    assert gapscan.square_diff_pairs(table, M, N) == brute_pairs(PRIMES, M, N)


def test_color_three_examples(table):
    cm = colour_map(gapscan.color_three(table, 100, 2, 2))
    assert cm[2] == "red"
    assert cm[23] == "yellow"
    assert gapscan.color_three(table, 1000, 3, 0).counts["red"] == 0


@pytest.mark.parametrize("x, t, r", [(100, 2, 2), (1000, 3, 3.8), (10_000, 3, 10), (5000, 1, 7.5)])
def test_color_three_matches_naive(table, x, t, r):
    assert colour_map(gapscan.color_three(table, x, t, r)) == naive_color_three(PRIMES, x, t, r)


def test_color_three_errors(table):
    with pytest.raises(DomainError):
        gapscan.color_three(table, 100, 0, 2)
    with pytest.raises(InsufficientTableError):
        gapscan.color_three(primes_up_to(110), 100, 2, 4)


def test_green_run_default_out_of_range(table):
    w = gapscan.green_run_search(table, 10**6)
    assert w.t == 0 and not w.found and "t < 2" in w.note


def test_green_run_explicit_parameters(table):
    w = gapscan.green_run_search(table, 100, 3, 3.8)
    assert w.found and w.primes == [23, 29, 31] and w.pairwise_ok
    # with r from the formula at t = 3, 23 is yellow and no run of three exists
    assert not gapscan.green_run_search(table, 100, 3).found
    with pytest.raises(DomainError):
        gapscan.green_run_search(table, 10)


@pytest.mark.parametrize("x, t, r", [(10**4, 2, 3), (10**5, 3, 4), (10**5, 4, 6), (10**6, 3, 5)])
def test_green_run_witnesses_are_consecutive_and_sdf(table, x, t, r):
    w = gapscan.green_run_search(table, x, t, r)
    if w.found:
        i = table.pi(w.primes[0]) - 1
        assert w.primes == table.primes[i : i + t].tolist()
        assert w.pairwise_ok and pairwise_sdf(w.primes)


@pytest.mark.parametrize("x, t, r", [(10**5, 3, 10), (10**5, 1, 2), (1000, 1, 5), (10**4, 2, 200)])
def test_yellow_bound(table, x, t, r):
    rep = gapscan.color_three(table, x, t, r)
    assert gapscan.yellow_bound_check(rep)
    assert sum(rep.counts.values()) == table.pi(x)
    if r * r > x:
        assert rep.counts["yellow"] == 0


def test_red_ceiling_interval():
    iv = gapscan.red_ceiling_interval(10**6, 2)
    assert abs(float(iv.mid) - 6.646 * 2 * 10**6 / math.log(10**6) ** 2) < 1e-6
