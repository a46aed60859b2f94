"""Scans over consecutive primes: G_k(x), red/green and red/yellow/green colourings.

Colour codes are small integers stored in a uint8 array parallel to the
primes <= x.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from . import _backend
from .errors import DomainError, InsufficientTableError
from .interval import interval, log
from .sqfree import is_square_difference_free

GREEN, RED, YELLOW = 0, 1, 2
COLOUR_NAMES = {GREEN: "green", RED: "red", YELLOW: "yellow"}

GAP_CONSTANT = 0.1504
RED_COUNT_CONSTANT = 6.646


@dataclass(frozen=True)
class ColoringReport:
    x: int
    params: dict
    primes: np.ndarray = field(repr=False)
    colors: np.ndarray = field(repr=False)
    counts: dict
    longest_green_run: tuple  # (1-based index n of the first prime, length)
    red_intervals: int
    green_intervals: int
    starts_red: bool

    def to_json(self):
        start, length = self.longest_green_run
        run = [int(p) for p in self.primes[start - 1 : start - 1 + length]] if length else []
        return {
            "x": self.x,
            "params": self.params,
            "counts": self.counts,
            "pi_x": int(self.primes.size),
            "longest_green_run": {"start_index": start, "length": length, "primes": run},
            "red_intervals": self.red_intervals,
            "green_intervals": self.green_intervals,
            "starts_red": self.starts_red,
        }

    def rows(self):
        """(prime, colour name) pairs for tabular output."""
        return [(int(p), COLOUR_NAMES[int(c)]) for p, c in zip(self.primes, self.colors)]


@dataclass(frozen=True)
class GreenRunWitness:
    primes: list
    pairwise_ok: bool
    t: int = 0
    r: float = 0.0
    found: bool = False
    note: str = ""


def g_k(t, x, k):
    """max over p_{n+k} <= x of min(p_{n+1}-p_n, ..., p_{n+k}-p_{n+k-1})."""
    if k < 1:
        raise DomainError("k must be positive")
    if x > t.limit:
        raise InsufficientTableError(f"x = {x} beyond table limit {t.limit}")
    ps = t.upto(x)
    if ps.size < k + 1:
        raise DomainError(f"fewer than {k + 1} primes up to {x}")
    return _backend.window_min_max(np.diff(ps), k)


def _runs(colors):
    """Counts of maximal non-green runs and green runs, and whether the first is non-green."""
    if colors.size == 0:
        return 0, 0, False
    green = colors == GREEN
    changes = np.count_nonzero(green[1:] != green[:-1])
    runs = changes + 1
    first_green = bool(green[0])
    green_runs = (runs + first_green) // 2
    return runs - green_runs, green_runs, not first_green


def _report(x, params, ps, colors):
    counts = {name: int(np.count_nonzero(colors == code)) for code, name in COLOUR_NAMES.items()}
    if "t" not in params:
        counts.pop("yellow")
    start, length = _backend.longest_run(colors, GREEN)
    red_iv, green_iv, starts_red = _runs(colors)
    return ColoringReport(
        x=x,
        params=params,
        primes=ps,
        colors=colors,
        counts=counts,
        longest_green_run=(start + 1 if length else 0, length),
        red_intervals=red_iv,
        green_intervals=green_iv,
        starts_red=starts_red,
    )


def color_two(t, x, r):
    """Red when the next prime is within r, green otherwise.

    The next prime may exceed x, so the table must reach x + r; a prime whose
    successor is beyond the table is then provably green.
    """
    if r < 0:
        raise DomainError("r must be non-negative")
    if x + r > t.limit:
        raise InsufficientTableError(f"colouring needs primes up to x + r = {x + r}")
    n = t.pi(x)
    ps = t.primes[:n]
    nxt = t.primes[1 : n + 1]
    gaps = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    gaps[: nxt.size] = nxt - ps[: nxt.size]
    colors = np.where(gaps <= r, RED, GREEN).astype(np.uint8)
    return _report(x, {"r": r}, ps, colors)


def red_green_parameters(x, k):
    """r = 0.1504 log x / k and whether k <= 0.0752 log x (equivalently r >= 2)."""
    lx = math.log(x)
    return GAP_CONSTANT * lx / k, k <= 0.0752 * lx


def red_green_report(t, x, k):
    """Two-colour scan at r = 0.1504 log x / k with the red-count ceiling.

    Below the (unspecified) threshold x0 the consecutive-green claim may
    fail; that is reported, not raised. ``k_in_assumed_range`` records
    whether k <= 0.0752 log x, which no x below ~3.6e11 satisfies for k = 2.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    r, in_range = red_green_parameters(x, k)
    rep = color_two(t, x, r)
    lx = math.log(x)
    red = rep.counts["red"]
    ceiling = RED_COUNT_CONSTANT * r * x / lx**2
    run = rep.longest_green_run[1]
    out = {
        "x": x,
        "k": k,
        "r": r,
        "k_in_assumed_range": in_range,
        "pi_x": int(rep.primes.size),
        "red": red,
        "green": rep.counts["green"],
        "red_ceiling": ceiling,
        "red_within_ceiling": red <= red_ceiling_interval(x, r).lo,
        "ratio": red * lx**2 / (r * x),
        "longest_green_run": run,
        "run_meets_k": run >= k,
        "red_intervals": rep.red_intervals,
        "green_intervals": rep.green_intervals,
        "starts_red": rep.starts_red,
    }
    if not rep.starts_red:
        out["note"] = "scan starts with a green prime; intervals counted as found"
    return out


def square_diff_pairs(t, M, N):
    """All prime pairs M < q < p <= N with p - q a positive square, sorted by (q, p)."""
    if N > t.limit:
        raise InsufficientTableError(f"N = {N} beyond table limit {t.limit}")
    if N <= M or N < 3:
        return []
    ps = t.upto(N)
    ps = ps[ps > M]
    lookup = t.is_prime_array()
    qs, pp = [], []
    for h in range(1, math.isqrt(N - max(M, 1)) + 1):
        d = h * h
        cand = ps[ps + d <= N]
        sel = cand[lookup[cand + d] == 1]
        qs.append(sel)
        pp.append(sel + d)
    if not qs:
        return []
    q = np.concatenate(qs)
    p = np.concatenate(pp)
    order = np.lexsort((p, q))
    return [(int(a), int(b)) for a, b in zip(q[order], p[order])]


def color_three(t, x, tparam, r):
    """Red if p + h^2 is prime for some 1 <= h <= r; else yellow if
    p_{i+t} - p_i > r^2; else green."""
    if tparam < 1:
        raise DomainError("t must be at least 1")
    if r < 0:
        raise DomainError("r must be non-negative")
    hmax = math.floor(r)
    reach = x + hmax * hmax
    if reach > t.limit or x + r * r > t.limit:
        raise InsufficientTableError(f"colouring needs primes up to x + r^2 = {x + r * r}")
    n = t.pi(x)
    ps = t.primes[:n]
    red = _backend.square_shift_hits(ps, t.is_prime_array(), hmax).astype(bool)
    ahead = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    later = t.primes[tparam : n + tparam]
    ahead[: later.size] = later - ps[: later.size]
    # ahead stays "infinite" past the table end: then p_{i+t} > limit >= p + r^2
    yellow = ~red & (ahead > r * r)
    colors = np.full(n, GREEN, dtype=np.uint8)
    colors[red] = RED
    colors[yellow] = YELLOW
    return _report(x, {"t": tparam, "r": r}, ps, colors)


def green_run_parameters(x):
    """t = floor(0.24 (log x)^(1/4)), r = t^(1/3) (log x)^(2/3) / 3.323^(1/3)."""
    lx = math.log(x)
    tp = math.floor(0.24 * lx**0.25)
    r = (tp ** (1 / 3)) * lx ** (2 / 3) / 3.323 ** (1 / 3)
    return tp, r


def green_run_search(t, x, tparam=None, r=None):
    """First run of t consecutive green primes under the three-colouring.

    ``tparam`` and ``r`` default to the formulas in ``green_run_parameters``;
    at desk-scale x that gives t < 2, which is reported as out of range.
    Every returned run is re-checked pairwise by brute force.
    """
    if x < 17:
        raise DomainError("green_run_search needs x >= 17")
    dt, dr = green_run_parameters(x)
    if tparam is None:
        tparam = dt
        if r is None:
            r = dr
    elif r is None:
        r = (tparam ** (1 / 3)) * math.log(x) ** (2 / 3) / 3.323 ** (1 / 3)
    if tparam < 2:
        return GreenRunWitness([], True, tparam, r, False, "t < 2: formula out of desk range")
    rep = color_three(t, x, tparam, r)
    green = (rep.colors == GREEN).astype(np.int8)
    if green.size < tparam:
        return GreenRunWitness([], True, tparam, r, False, "too few primes")
    window = np.convolve(green, np.ones(tparam, dtype=np.int8), mode="valid")
    hits = np.flatnonzero(window == tparam)
    if hits.size == 0:
        return GreenRunWitness([], True, tparam, r, False, "no run of t green primes")
    i = int(hits[0])
    run = [int(p) for p in rep.primes[i : i + tparam]]
    return GreenRunWitness(run, is_square_difference_free(run), tparam, r, True)


def yellow_bound_check(report):
    """Y <= t x / r^2, checked exactly for rational r."""
    tp = report.params["t"]
    r = Fraction(report.params["r"])
    y = report.counts["yellow"]
    if r == 0:
        return y == 0
    return y * r * r <= tp * report.x


def red_ceiling_interval(x, r, prec=96):
    """6.646 r x / (log x)^2 as a certified interval."""
    return (interval("6.646") * Fraction(r) * x / (log(x, prec) * log(x, prec))).round_out(prec)
