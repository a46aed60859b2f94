"""Both kernel sets must agree with each other and with plain oracles."""
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import trial_division_primes
from pgap import _backend
from pgap.sieve import _small_primes

PRIMES = trial_division_primes(40_000)


def test_backend_selected():
    assert _backend.BACKEND in ("python", "cython")
    assert _backend.BACKEND == _backend.kernels.NAME


@pytest.mark.parametrize("lo, n", [(3, 1), (3, 500), (1001, 777), (39_001, 400), (5, 3)])
def test_sieve_segment(kernels, lo, n):
    base = _small_primes(int((lo + 2 * n) ** 0.5) + 1)
    flags = kernels.sieve_segment(lo, n, base)
    odds = range(lo, lo + 2 * n, 2)
    pset = set(PRIMES)
    assert flags.dtype == np.uint8
    assert [int(f) for f in flags] == [0 if v in pset else 1 for v in odds]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 200), min_size=1, max_size=60), st.integers(1, 6))
def test_window_min_max(gaps, k):
    if len(gaps) < k:
        return
    ref = max(min(gaps[i : i + k]) for i in range(len(gaps) - k + 1))
    arr = np.array(gaps, dtype=np.int64)
    assert _backend.python_kernels.window_min_max(arr, k) == ref
    if _backend.compiled_kernels is not None:
        assert _backend.compiled_kernels.window_min_max(arr, k) == ref


def _naive_run(codes, value):
    best, start, i = (-1, 0), None, 0
    for i, c in enumerate(list(codes) + [None]):
        if c == value and start is None:
            start = i
        elif c != value and start is not None:
            if i - start > best[1]:
                best = (start, i - start)
            start = None
    return best


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=80), st.integers(0, 2))
def test_longest_run(codes, value):
    arr = np.array(codes, dtype=np.uint8)
    ref = _naive_run(codes, value)
    assert _backend.python_kernels.longest_run(arr, value) == ref
    if _backend.compiled_kernels is not None:
        assert _backend.compiled_kernels.longest_run(arr, value) == ref


@pytest.mark.parametrize("hmax", [0, 1, 3, 10])
def test_square_shift_hits(kernels, hmax):
    lookup = np.zeros(40_001, dtype=np.uint8)
    lookup[PRIMES] = 1
    ps = np.array([p for p in PRIMES if p < 30_000], dtype=np.int64)
    got = kernels.square_shift_hits(ps, lookup, hmax)
    pset = set(PRIMES)
    ref = [int(any(p + h * h in pset for h in range(1, hmax + 1))) for p in ps.tolist()]
    assert got.tolist() == ref


def _bits(g, order):
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return adj


@pytest.mark.parametrize("seed", range(12))
def test_max_clique_against_networkx(kernels, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 90)
    g = nx.gnp_random_graph(n, rng.uniform(0.1, 0.9), seed=seed)
    adj = _bits(g, list(range(n)))
    clique, nodes, complete = kernels.max_clique(adj, 10**7)
    assert complete
    assert len(clique) == nx.max_weight_clique(g, weight=None)[1]
    assert all(adj[a] >> b & 1 for a in clique for b in clique if a != b)


@pytest.mark.parametrize("seed", range(6))
def test_max_clique_backends_identical(seed):
    if _backend.compiled_kernels is None:
        pytest.skip("compiled kernels not built")
    g = nx.gnp_random_graph(120, 0.5, seed=seed)
    adj = _bits(g, list(range(120)))
    assert _backend.python_kernels.max_clique(adj, 10**7) == _backend.compiled_kernels.max_clique(adj, 10**7)


def test_max_clique_budget_and_bounds(kernels):
    g = nx.complete_graph(10)
    adj = _bits(g, list(range(10)))
    clique, _, complete = kernels.max_clique(adj, 10**6)
    assert len(clique) == 10 and complete
    # nothing larger than the lower bound exists
    assert kernels.max_clique(adj, 10**6, lower=10)[0] == []
    # stopping early is reported as incomplete
    clique, _, complete = kernels.max_clique(adj, 10**6, stop_at=3)
    assert len(clique) >= 3
    g = nx.gnp_random_graph(150, 0.7, seed=1)
    _, nodes, complete = kernels.max_clique(_bits(g, list(range(150))), 5)
    assert not complete and nodes <= 6
    assert kernels.max_clique([], 10) == ([], 0, True)
