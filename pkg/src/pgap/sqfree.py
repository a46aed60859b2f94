"""Square-difference-free residue sets, digit constructions and prime subsets.

A set of integers is square-difference-free (SDF) when no two elements differ
by ``h**2`` with ``h >= 1``. Modulo a squarefree ``m`` the analogue asks that
no difference of two distinct residues is a square mod ``m``; base-``m``
digit sets whose even-position digits come from such a residue set are SDF as
integers.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import _backend
from .errors import DomainError, InsufficientTableError
from .interval import CertifiedInterval, exp, interval, log
from .modular import crt, is_squarefree

DEFAULT_CLIQUE_BUDGET = 10**8

RUZSA_PAIRS = ((0, 0), (0, 2), (1, 8), (2, 1), (2, 3), (3, 9), (4, 7))


@dataclass(frozen=True)
class ResidueSet:
    modulus: int
    residues: frozenset

    def __post_init__(self):
        object.__setattr__(self, "residues", frozenset(int(r) for r in self.residues))
        if self.modulus < 2 or not is_squarefree(self.modulus):
            raise DomainError(f"modulus {self.modulus} is not a squarefree integer >= 2")
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise DomainError("residues must lie in [0, modulus)")

    def __len__(self):
        return len(self.residues)

    def sorted(self):
        return sorted(self.residues)


@dataclass(frozen=True)
class QRTable:
    modulus: int
    squares: frozenset

    def __contains__(self, r):
        return r % self.modulus in self.squares


@dataclass(frozen=True)
class DigitTupleSpec:
    """Shift ``i_j`` for every even digit position ``j < digits``."""

    modulus: int
    digits: int
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(i) for i in self.shifts))
        if self.digits < 1:
            raise DomainError("need at least one digit")
        if len(self.shifts) != even_positions(self.digits):
            raise DomainError(f"{self.digits} digits need {even_positions(self.digits)} shifts")
        if any(not 0 <= i < self.modulus for i in self.shifts):
            raise DomainError("shifts must lie in [0, modulus)")


@dataclass(frozen=True)
class SDFSet:
    elements: tuple
    provenance: object = None

    def __len__(self):
        return len(self.elements)


def even_positions(n):
    """Number of even indices in [0, n)."""
    return (n + 1) // 2


def squares_mod(m):
    if m < 2:
        raise DomainError("squares_mod needs m >= 2")
    return QRTable(m, frozenset(x * x % m for x in range(m)))


def is_sdf_residue_set(R):
    sq = squares_mod(R.modulus).squares
    m = R.modulus
    return not any((a - b) % m in sq for a in R.residues for b in R.residues if a != b)


def ruzsa_65():
    """The 7-element SDF subset of Z_65 built from (mod 5, mod 13) pairs."""
    return ResidueSet(65, frozenset(crt([(a, 5), (b, 13)])[0] for a, b in RUZSA_PAIRS))


def shifted_family(R, a):
    if not 0 <= a < R.modulus:
        raise DomainError(f"shift {a} outside [0, {R.modulus})")
    return ResidueSet(R.modulus, frozenset((r + a) % R.modulus for r in R.residues))


def compatible_differences(m):
    """Residues d != 0 with both d and -d non-squares mod m."""
    sq = squares_mod(m).squares
    return [d for d in range(1, m) if d not in sq and (m - d) % m not in sq]


def _symmetry_group(m):
    """Units u with u * d preserving the square/non-square split up to sign."""
    sq = squares_mod(m).squares
    unit_squares = {u for u in sq if math.gcd(u, m) == 1}
    return sorted(unit_squares | {(m - u) % m for u in unit_squares})


def max_sdf_residues(m, mode="exact", budget=DEFAULT_CLIQUE_BUDGET, target=None, symmetry=True):
    """Largest SDF residue set mod m via branch-and-bound maximum clique.

    The compatibility graph on Z_m is invariant under translation and under
    multiplication by (plus or minus) unit squares, so the search fixes 0 in
    the clique and takes the second vertex from one orbit representative at
    a time, excluding orbits already handled. ``symmetry=False`` keeps only
    the translation reduction.

    ``mode="exact"`` searches until optimality is proven or ``budget`` nodes
    are spent. ``mode="witness"`` additionally stops as soon as a set of size
    ``target`` is found. Returns ``(size, witness, optimal)``.
    """
    if mode not in ("exact", "witness"):
        raise DomainError(f"unknown mode {mode!r}")
    if m < 2 or not is_squarefree(m):
        raise DomainError(f"{m} is not a squarefree integer >= 2")
    stop_at = target if mode == "witness" and target else 0
    nbrs = compatible_differences(m)
    ok = np.zeros(m, dtype=bool)
    ok[nbrs] = True
    best = [0]
    if not nbrs:
        return 1, ResidueSet(m, frozenset(best)), True
    group = _symmetry_group(m) if symmetry else [1]
    seen = set()
    nodes_left = budget
    optimal = True
    for v in nbrs:
        if v in seen:
            continue
        orbit = {v * u % m for u in group}
        cands = [w for w in nbrs if w not in seen and w != v and ok[(w - v) % m]]
        seen |= orbit
        if stop_at and len(best) >= stop_at:
            optimal = False
            break
        if 2 + len(cands) <= len(best):
            continue
        degree = {w: sum(ok[(w - u) % m] for u in cands) for w in cands}
        order = sorted(cands, key=lambda w: (-degree[w], w))
        index = {w: i for i, w in enumerate(order)}
        adj = [0] * len(order)
        for w in order:
            bits = 0
            for u in order:
                if u != w and ok[(w - u) % m]:
                    bits |= 1 << index[u]
            adj[index[w]] = bits
        clique, nodes, complete = _backend.max_clique(
            adj, nodes_left, lower=max(len(best) - 2, 0), stop_at=max(stop_at - 2, 0)
        )
        nodes_left -= nodes
        if clique or (not order and len(best) < 2):
            best = [0, v] + [order[i] for i in clique]
        if not complete:
            optimal = False
            if nodes_left <= 0 or (stop_at and len(best) >= stop_at):
                break
    return len(best), ResidueSet(m, frozenset(best)), optimal


def _check_digit_spec(spec, R):
    if spec.modulus != R.modulus:
        raise DomainError(f"spec modulus {spec.modulus} != residue modulus {R.modulus}")
    if not is_sdf_residue_set(R):
        raise DomainError("residue set is not square-difference-free")
    if spec.modulus ** spec.digits >= 2**62:
        raise DomainError("digit set would not fit in 64-bit integers")


def build_digit_set(spec, R):
    """All s = 1 + sum r_j m^j with even-position digits in R shifted by that position's shift."""
    _check_digit_spec(spec, R)
    m = spec.modulus
    values = np.zeros(1, dtype=np.int64)
    for j in range(spec.digits):
        if j % 2 == 0:
            digits = np.array(shifted_family(R, spec.shifts[j // 2]).sorted(), dtype=np.int64)
        else:
            digits = np.arange(m, dtype=np.int64)
        values = (values[:, None] + digits[None, :] * m**j).ravel()
    values = np.sort(values) + 1
    return SDFSet(tuple(int(v) for v in values), spec)


def is_square_difference_free(elements):
    """Exhaustive check that no two elements differ by a positive square."""
    a = np.unique(np.asarray(elements, dtype=np.int64))
    if a.size < 2:
        return True
    span = int(a[-1] - a[0])
    if span <= 10**8:
        present = np.zeros(span + 1, dtype=bool)
        present[a - a[0]] = True
        offs = a - a[0]
        for h in range(1, math.isqrt(span) + 1):
            sq = h * h
            hits = offs[offs + sq <= span]
            if present[hits + sq].any():
                return False
        return True
    for i in range(a.size - 1):
        d = a[i + 1 :] - a[i]
        r = np.sqrt(d.astype(np.float64)).round().astype(np.int64)
        if np.any(r * r == d):
            return False
    return True


def tuple_prime_counts(m, n, R, t):
    """Primes p <= m^n in S(shifts) for every shift tuple, as a flat array.

    Index ``sum_q i_{2q} * m^(k-1-q)`` orders tuples lexicographically, so the
    first maximum is the lexicographically smallest best tuple.
    """
    top = m**n
    if t.limit < top:
        raise InsufficientTableError(f"need a prime table up to {top}, have {t.limit}")
    k = even_positions(n)
    rs = np.array(R.sorted(), dtype=np.int64)
    v = t.upto(top) - 1
    idx = np.zeros((v.size, 1), dtype=np.int64)
    for q in range(k):
        digit = (v // m ** (2 * q)) % m
        comp = (digit[:, None] - rs[None, :]) % m
        idx = (idx[:, :, None] * m + comp[:, None, :]).reshape(v.size, -1)
    return np.bincount(idx.ravel(), minlength=m**k)


def _decode_tuple(index, m, k):
    out = []
    for _ in range(k):
        out.append(int(index % m))
        index //= m
    return tuple(reversed(out))


def best_tuple_for_primes(m, n, R, t):
    """Shift tuple whose digit set holds the most primes <= m^n (ties: lexicographically least)."""
    counts = tuple_prime_counts(m, n, R, t)
    best = int(np.argmax(counts))
    spec = DigitTupleSpec(m, n, _decode_tuple(best, m, even_positions(n)))
    return spec, int(counts[best])


def gamma(m, r, prec=128):
    """1/2 + log r / (2 log m) as a certified interval."""
    return (interval("0.5") + log(r, prec) / (log(m, prec) * 2)).round_out(prec)


def sdf_size_bound(x, m, r, prec=128):
    """x^gamma(m) / (m log x), the guaranteed size of an SDF prime set in [1, x]."""
    lx = log(x, prec)
    return (exp((gamma(m, r, prec) * lx).round_out(prec), prec) / (lx * m)).round_out(prec)


def sdf_prime_witness(x, m, R, t):
    """SDF set of primes <= x from the best digit tuple, and the size it must reach.

    Returns ``(primes, bound, meets_bound)`` where ``bound`` encloses
    x^gamma/(m log x) with gamma computed from |R|.
    """
    if x < 17:
        raise DomainError("sdf_prime_witness needs x >= 17")
    if t.limit < x:
        raise InsufficientTableError(f"need a prime table up to {x}, have {t.limit}")
    if R.modulus != m:
        raise DomainError("residue set modulus does not match m")
    n = 0
    while m ** (n + 1) <= x:
        n += 1
    bound = sdf_size_bound(x, m, len(R)).labelled(f"x^gamma/(m log x), x={x}, m={m}")
    if n == 0:
        # no full digit block fits below x; a single prime is trivially SDF
        chosen = SDFSet((2,), "single prime")
    else:
        spec, _ = best_tuple_for_primes(m, n, R, t)
        members = np.array(build_digit_set(spec, R).elements, dtype=np.int64)
        chosen = SDFSet(tuple(int(p) for p in members[t.is_prime_array()[members] == 1]), spec)
    if not is_square_difference_free(chosen.elements):
        raise AssertionError("digit-set primes contain a square difference")
    return chosen, bound, bound.hi <= len(chosen)
