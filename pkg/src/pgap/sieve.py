"""Segmented sieve of Eratosthenes and the prime table built on it."""
from dataclasses import dataclass, field
import logging
import math
import os
import struct

import numpy as np

from . import _backend
from .errors import DomainError, InsufficientTableError

log = logging.getLogger(__name__)

CACHE_MAGIC = b"PGAP"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sBQ")


@dataclass(frozen=True)
class SieveConfig:
    segment_size: int = 1 << 20
    cache_path: str | None = None

    def __post_init__(self):
        if self.segment_size < 1 << 10:
            raise DomainError("segment_size must be at least 1024")


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit``, ascending. ``p_n`` is ``primes[n - 1]``."""

    limit: int
    primes: np.ndarray = field(repr=False)
    _lookup: list = field(default_factory=list, repr=False)

    @property
    def count(self):
        return int(self.primes.size)

    def pi(self, y):
        """Number of primes <= y, for y within the table."""
        if y > self.limit:
            raise InsufficientTableError(f"pi({y}) needs a table up to {y}")
        return int(np.searchsorted(self.primes, y, side="right"))

    def upto(self, y):
        return self.primes[: self.pi(y)]

    def is_prime_array(self):
        """uint8 lookup of length ``limit + 1``; built once and cached."""
        if not self._lookup:
            flags = np.zeros(self.limit + 1, dtype=np.uint8)
            flags[self.primes] = 1
            flags.setflags(write=False)
            self._lookup.append(flags)
        return self._lookup[0]

    def is_prime(self, n):
        if n > self.limit:
            raise InsufficientTableError(f"{n} is beyond the table limit {self.limit}")
        if n < 2:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < self.primes.size and int(self.primes[i]) == n


def _small_primes(n):
    """Odd primes <= n by a plain sieve; used as the base for segments."""
    if n < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:3] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _odd_composite_flags(x, segment_size):
    """Composite flags for the odd numbers 3, 5, ..., <= x."""
    total = (x - 1) // 2
    base = _small_primes(math.isqrt(x))
    chunks = []
    lo = 3
    done = 0
    while done < total:
        n = min(segment_size, total - done)
        chunks.append(_backend.sieve_segment(lo, n, base))
        lo += 2 * n
        done += n
    if not chunks:
        return np.zeros(0, dtype=np.uint8)
    return np.concatenate(chunks)


def _table_from_flags(x, flags):
    odd = 3 + 2 * np.flatnonzero(flags[: (x - 1) // 2] == 0).astype(np.int64)
    primes = np.concatenate((np.array([2], dtype=np.int64), odd))
    primes.setflags(write=False)
    return PrimeTable(limit=x, primes=primes)


def write_cache(path, limit, flags):
    bits = np.packbits(flags.astype(np.uint8), bitorder="little").tobytes()
    pad = (-len(bits)) % 8
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, limit))
        fh.write(bits + b"\0" * pad)


def read_cache(path):
    """Return ``(limit, flags)`` from a cache file, or None if unusable."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError:
        return None
    if len(data) < _HEADER.size:
        return None
    magic, version, limit = _HEADER.unpack_from(data)
    if magic != CACHE_MAGIC or version != CACHE_VERSION or limit < 2:
        return None
    n_odd = (limit - 1) // 2
    body = data[_HEADER.size :]
    need = (n_odd + 7) // 8
    if len(body) != need + (-need) % 8:
        return None
    flags = np.unpackbits(np.frombuffer(body, dtype=np.uint8), count=n_odd, bitorder="little")
    return limit, flags


def primes_up_to(x, cfg=None):
    """Complete prime table for ``2 <= p <= x``.

    With ``cfg.cache_path`` set, a valid cache covering ``x`` is reused and a
    missing or unusable one is (re)written after sieving.
    """
    x = int(x)
    if x < 2:
        raise DomainError("primes_up_to needs x >= 2")
    cfg = cfg or SieveConfig()
    if cfg.cache_path:
        cached = read_cache(cfg.cache_path)
        if cached is not None and cached[0] >= x:
            return _table_from_flags(x, cached[1])
        if cached is None and os.path.exists(cfg.cache_path):
            log.debug("discarding unusable sieve cache %s", cfg.cache_path)
    flags = _odd_composite_flags(x, cfg.segment_size)
    if cfg.cache_path:
        try:
            write_cache(cfg.cache_path, x, flags)
        except OSError as exc:
            log.warning("could not write sieve cache: %s", exc)
    return _table_from_flags(x, flags)


def nth_prime(t, n):
    """p_n with p_1 = 2."""
    if not 1 <= n <= t.count:
        raise IndexError(f"prime index {n} outside 1..{t.count}")
    return int(t.primes[n - 1])


def pair_count_with_difference(t, N, h):
    """Number of primes p <= N with p + h also prime."""
    if h < 1:
        raise DomainError("difference h must be positive")
    if N + h > t.limit:
        raise InsufficientTableError(f"need a table up to {N + h}, have {t.limit}")
    if N < 2:
        return 0
    ps = t.upto(N)
    return int(np.count_nonzero(t.is_prime_array()[ps + h]))
