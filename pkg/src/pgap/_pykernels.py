"""Pure Python / numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
``pgap._backend`` picks one of the two at import time.
"""
import numpy as np

NAME = "python"


def sieve_segment(lo, n, base_primes):
    """Composite flags for the odd numbers ``lo, lo+2, ..., lo+2(n-1)``.

    ``lo`` must be odd and at least 3. ``base_primes`` holds the odd primes up
    to at least ``isqrt(lo + 2n)`` in ascending order. Returns a uint8 array
    with 1 marking a composite.
    """
    flags = np.zeros(n, dtype=np.uint8)
    hi = lo + 2 * n
    for p in base_primes:
        p = int(p)
        sq = p * p
        if sq >= hi:
            break
        start = max(sq, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        flags[(start - lo) // 2::p] = 1
    return flags


def window_min_max(gaps, k):
    """max over windows of ``k`` consecutive gaps of the window minimum."""
    gaps = np.asarray(gaps, dtype=np.int64)
    if k < 1 or gaps.size < k:
        raise ValueError("need at least k gaps")
    windows = np.lib.stride_tricks.sliding_window_view(gaps, k)
    return int(windows.min(axis=1).max())


def longest_run(codes, value):
    """(start, length) of the first longest run of ``value`` in ``codes``.

    Returns ``(-1, 0)`` when ``value`` does not occur.
    """
    hit = np.concatenate(([0], (np.asarray(codes) == value).astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(hit))
    if edges.size == 0:
        return -1, 0
    starts, ends = edges[0::2], edges[1::2]
    lengths = ends - starts
    i = int(np.argmax(lengths))
    return int(starts[i]), int(lengths[i])


def square_shift_hits(primes, is_prime, hmax):
    """Flag each ``p`` for which ``p + h*h`` is prime for some ``1 <= h <= hmax``.

    ``is_prime`` is a uint8 lookup indexed by integer value; it must cover
    ``max(primes) + hmax**2``.
    """
    primes = np.asarray(primes, dtype=np.int64)
    hit = np.zeros(primes.size, dtype=np.uint8)
    for h in range(1, hmax + 1):
        hit |= is_prime[primes + h * h]
    return hit


def max_clique(adjacency, budget, lower=0, stop_at=0):
    """Branch-and-bound maximum clique with greedy colouring bounds.

    ``adjacency`` is a list of Python ints, bit ``j`` of entry ``i`` set when
    vertices ``i`` and ``j`` are adjacent. Vertices are explored in index
    order, so callers control determinism through the numbering.

    Only cliques strictly larger than ``lower`` are reported. The search stops
    early once a clique of size ``stop_at`` is found (``0`` disables this).
    Returns ``(clique, nodes, complete)``; ``complete`` is False when the node
    budget ran out or the search stopped early.
    """
    n = len(adjacency)
    best = []
    best_size = lower
    nodes = 0
    aborted = False

    def colour_sort(cands, kmin):
        order, colours = [], []
        uncoloured = cands
        colour = 0
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adjacency[v] & ~low
                uncoloured &= ~low
                if colour >= kmin:
                    order.append(v)
                    colours.append(colour)
        return order, colours

    def expand(clique, cands):
        nonlocal best, best_size, nodes, aborted
        nodes += 1
        if nodes > budget:
            aborted = True
            return
        kmin = best_size - len(clique) + 1
        order, colours = colour_sort(cands, max(kmin, 1))
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + colours[idx] <= best_size:
                return
            v = order[idx]
            clique.append(v)
            sub = cands & adjacency[v]
            if sub:
                expand(clique, sub)
            elif len(clique) > best_size:
                best = list(clique)
                best_size = len(clique)
            clique.pop()
            if aborted or (stop_at and best_size >= stop_at):
                aborted = True
                return
            cands &= ~(1 << v)

    if n:
        expand([], (1 << n) - 1)
    return best, nodes, not aborted
