"""Slow, obviously-correct reference implementations used as test oracles."""
from itertools import combinations
import math


def trial_division_primes(n):
    out = []
    for k in range(2, n + 1):
        if all(k % p for p in out if p * p <= k):
            out.append(k)
    return out


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def naive_gk(primes, x, k):
    ps = [p for p in primes if p <= x]
    best = None
    for n in range(len(ps) - k):
        m = min(ps[n + j + 1] - ps[n + j] for j in range(k))
        best = m if best is None else max(best, m)
    return best


def squares_mod(m):
    return {x * x % m for x in range(m)}


def is_sdf_mod(residues, m):
    sq = squares_mod(m)
    return all((a - b) % m not in sq for a in residues for b in residues if a != b)


def exhaustive_r(m):
    """Largest SDF subset of Z_m by plain subset enumeration (small m only)."""
    for size in range(m, 0, -1):
        for combo in combinations(range(m), size):
            if is_sdf_mod(combo, m):
                return size, combo
    return 0, ()


def networkx_r(m):
    import networkx as nx

    sq = squares_mod(m)
    g = nx.Graph()
    g.add_nodes_from(range(m))
    g.add_edges_from(
        (a, b) for a in range(m) for b in range(a + 1, m) if (a - b) % m not in sq and (b - a) % m not in sq
    )
    clique, size = nx.max_weight_clique(g, weight=None)
    return size, sorted(clique)


def pairwise_sdf(elements):
    els = sorted(set(elements))
    for i, a in enumerate(els):
        for b in els[i + 1 :]:
            d = b - a
            r = math.isqrt(d)
            if r * r == d:
                return False
    return True


def brute_pairs(primes, M, N):
    ps = [p for p in primes if M < p <= N]
    out = []
    for i, q in enumerate(ps):
        for p in ps[i + 1 :]:
            h = math.isqrt(p - q)
            if h * h == p - q:
                out.append((q, p))
    return out


def naive_color_two(primes, x, r):
    out = {}
    for i, p in enumerate(primes):
        if p > x:
            break
        out[p] = "red" if i + 1 < len(primes) and primes[i + 1] - p <= r else "green"
    return out


def naive_color_three(primes, x, t, r):
    prime_set = set(primes)
    out = {}
    for i, p in enumerate(primes):
        if p > x:
            break
        if any(p + h * h in prime_set for h in range(1, math.floor(r) + 1)):
            out[p] = "red"
        elif i + t >= len(primes) or primes[i + t] - p > r * r:
            out[p] = "yellow"
        else:
            out[p] = "green"
    return out


def naive_gk_prefix(primes, k):
    """G_k at each prime: entry j is G_k(primes[j]), None until k gaps fit."""
    out, best = [], None
    for j, p in enumerate(primes):
        if j >= k:
            m = min(primes[j - i] - primes[j - i - 1] for i in range(k))
            best = m if best is None else max(best, m)
        out.append(best)
    return out


def pairwise_sdf_numpy(elements):
    """All-pairs square test, one row of differences at a time (exact below 2**52)."""
    import numpy as np

    a = np.unique(np.asarray(elements, dtype=np.int64))
    for i in range(a.size - 1):
        d = a[i + 1 :] - a[i]
        r = np.floor(np.sqrt(d.astype(np.float64))).astype(np.int64)
        if np.any((r * r == d) | ((r + 1) * (r + 1) == d) | ((r - 1) * (r - 1) == d)):
            return False
    return True
