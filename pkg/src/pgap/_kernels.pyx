# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contracts."""
import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport calloc, free

NAME = "cython"


def sieve_segment(long long lo, Py_ssize_t n, base_primes):
    flags = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] f = flags
    cdef const int64_t[::1] bp = np.ascontiguousarray(base_primes, dtype=np.int64)
    cdef long long hi = lo + 2 * n
    cdef long long p, sq, start
    cdef Py_ssize_t i, j
    for i in range(bp.shape[0]):
        p = bp[i]
        sq = p * p
        if sq >= hi:
            break
        start = ((lo + p - 1) // p) * p
        if start < sq:
            start = sq
        if (start & 1) == 0:
            start += p
        j = (start - lo) // 2
        while j < n:
            f[j] = 1
            j += p
    return flags


def window_min_max(gaps, Py_ssize_t k):
    cdef const int64_t[::1] g = np.ascontiguousarray(gaps, dtype=np.int64)
    cdef Py_ssize_t n = g.shape[0]
    if k < 1 or n < k:
        raise ValueError("need at least k gaps")
    cdef Py_ssize_t i, j
    cdef int64_t best = -1, cur
    for i in range(n - k + 1):
        cur = g[i]
        for j in range(i + 1, i + k):
            if g[j] < cur:
                cur = g[j]
            if cur <= best:
                break
        if cur > best:
            best = cur
    return int(best)


def longest_run(codes, int value):
    cdef const uint8_t[::1] c = np.ascontiguousarray(codes, dtype=np.uint8)
    cdef Py_ssize_t i, n = c.shape[0]
    cdef Py_ssize_t run = 0, start = 0, best_start = -1, best_len = 0
    for i in range(n):
        if c[i] == value:
            if run == 0:
                start = i
            run += 1
            if run > best_len:
                best_len = run
                best_start = start
        else:
            run = 0
    return int(best_start), int(best_len)


def square_shift_hits(primes, is_prime, Py_ssize_t hmax):
    cdef const int64_t[::1] ps = np.ascontiguousarray(primes, dtype=np.int64)
    cdef const uint8_t[::1] lookup = np.ascontiguousarray(is_prime, dtype=np.uint8)
    hit = np.zeros(ps.shape[0], dtype=np.uint8)
    cdef uint8_t[::1] out = hit
    cdef Py_ssize_t i, h
    cdef int64_t p
    for i in range(ps.shape[0]):
        p = ps[i]
        for h in range(1, hmax + 1):
            if lookup[p + h * h]:
                out[i] = 1
                break
    return hit


cdef struct Search:
    int n
    int words
    uint64_t* adj
    uint64_t* cands
    uint64_t* scratch_u
    uint64_t* scratch_q
    int* order
    int* colours
    int* clique
    int* best
    int best_size
    int stop_at
    long long nodes
    long long budget
    bint aborted


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int lowest_bit(uint64_t* s, int words) noexcept nogil:
    cdef int w
    for w in range(words):
        if s[w]:
            return w * 64 + <int>__builtin_ctzll(s[w])
    return -1


cdef inline bint is_empty(uint64_t* s, int words) noexcept nogil:
    cdef int w
    for w in range(words):
        if s[w]:
            return False
    return True


cdef int colour_sort(Search* S, uint64_t* cands, int* order, int* colours, int kmin) noexcept nogil:
    cdef int W = S.words
    cdef uint64_t* u = S.scratch_u
    cdef uint64_t* q = S.scratch_q
    cdef int w, v, count = 0, colour = 0
    cdef uint64_t* nv
    for w in range(W):
        u[w] = cands[w]
    while not is_empty(u, W):
        colour += 1
        for w in range(W):
            q[w] = u[w]
        while True:
            v = lowest_bit(q, W)
            if v < 0:
                break
            nv = S.adj + <Py_ssize_t>v * W
            for w in range(W):
                q[w] &= ~nv[w]
            q[v >> 6] &= ~((<uint64_t>1) << (v & 63))
            u[v >> 6] &= ~((<uint64_t>1) << (v & 63))
            if colour >= kmin:
                order[count] = v
                colours[count] = colour
                count += 1
    return count


cdef void expand(Search* S, int depth, int size) noexcept nogil:
    cdef int W = S.words
    cdef uint64_t* cands = S.cands + <Py_ssize_t>depth * W
    cdef uint64_t* sub = S.cands + <Py_ssize_t>(depth + 1) * W
    cdef int* order = S.order + <Py_ssize_t>depth * S.n
    cdef int* colours = S.colours + <Py_ssize_t>depth * S.n
    cdef int kmin, count, idx, v, w, i
    cdef uint64_t* nv
    S.nodes += 1
    if S.nodes > S.budget:
        S.aborted = True
        return
    kmin = S.best_size - size + 1
    if kmin < 1:
        kmin = 1
    count = colour_sort(S, cands, order, colours, kmin)
    idx = count - 1
    while idx >= 0:
        if size + colours[idx] <= S.best_size:
            return
        v = order[idx]
        S.clique[size] = v
        nv = S.adj + <Py_ssize_t>v * W
        for w in range(W):
            sub[w] = cands[w] & nv[w]
        if not is_empty(sub, W):
            expand(S, depth + 1, size + 1)
        elif size + 1 > S.best_size:
            S.best_size = size + 1
            for i in range(size + 1):
                S.best[i] = S.clique[i]
        if S.aborted or (S.stop_at and S.best_size >= S.stop_at):
            S.aborted = True
            return
        cands[v >> 6] &= ~((<uint64_t>1) << (v & 63))
        idx -= 1


def max_clique(adjacency, long long budget, int lower=0, int stop_at=0):
    cdef int n = len(adjacency)
    if n == 0:
        return [], 0, True
    cdef int W = (n + 63) // 64
    cdef Search S
    cdef int i, w
    cdef object row
    S.n = n
    S.words = W
    S.adj = <uint64_t*>calloc(<size_t>n * W, sizeof(uint64_t))
    S.cands = <uint64_t*>calloc(<size_t>(n + 2) * W, sizeof(uint64_t))
    S.scratch_u = <uint64_t*>calloc(W, sizeof(uint64_t))
    S.scratch_q = <uint64_t*>calloc(W, sizeof(uint64_t))
    S.order = <int*>calloc(<size_t>(n + 2) * n, sizeof(int))
    S.colours = <int*>calloc(<size_t>(n + 2) * n, sizeof(int))
    S.clique = <int*>calloc(n + 1, sizeof(int))
    S.best = <int*>calloc(n + 1, sizeof(int))
    if (S.adj == NULL or S.cands == NULL or S.scratch_u == NULL or S.scratch_q == NULL
            or S.order == NULL or S.colours == NULL or S.clique == NULL or S.best == NULL):
        free(S.adj); free(S.cands); free(S.scratch_u); free(S.scratch_q)
        free(S.order); free(S.colours); free(S.clique); free(S.best)
        raise MemoryError()
    try:
        for i in range(n):
            row = adjacency[i]
            for w in range(W):
                S.adj[<Py_ssize_t>i * W + w] = <uint64_t>((row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        for i in range(n):
            S.cands[i >> 6] |= (<uint64_t>1) << (i & 63)
        S.best_size = lower
        S.stop_at = stop_at
        S.nodes = 0
        S.budget = budget
        S.aborted = False
        with nogil:
            expand(&S, 0, 0)
        best = [S.best[i] for i in range(S.best_size)] if S.best_size > lower else []
        return best, int(S.nodes), not S.aborted
    finally:
        free(S.adj); free(S.cands); free(S.scratch_u); free(S.scratch_q)
        free(S.order); free(S.colours); free(S.clique); free(S.best)
