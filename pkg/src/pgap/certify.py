"""Certified evaluation of the numeric constants behind the gap bounds.

Every quantity is returned as a :class:`CertifiedInterval`; an inequality
counts as verified only when the enclosures are strictly separated.
"""
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
import math

import numpy as np

from .errors import DomainError
from .interval import (
    DEFAULT_PRECISION,
    CertifiedInterval,
    exp,
    format_decimal,
    interval,
    log,
    log10,
    log_int,
    round_down,
    round_up,
)
from .sieve import primes_up_to

# Printed results of the five reference computations.
GOLDEN = {
    "euler_product": "0.660175738989977",
    "pair_sum": "0.727089417741948",
    "sqfree_even": "0.303923082993008",
    "sqfree_odd": "0.607886600147474",
    "log10_W": "17.7887972765829",
    "primorial_exponent": "1.83383491155388e76",
}
GOLDEN_ABS_TOL = Fraction(1, 10**12)
GOLDEN_REL_TOL = Fraction(1, 10**10)


@dataclass(frozen=True)
class InequalityReport:
    name: str
    claimed: str
    verified: bool
    witness: CertifiedInterval

    def to_json(self, digits=20):
        return {
            "name": self.name,
            "claimed": self.claimed,
            "verified": bool(self.verified),
            "lo": format_decimal(self.witness.lo, digits, "down"),
            "hi": format_decimal(self.witness.hi, digits, "up"),
        }


def report_less(name, claimed, lhs, rhs):
    """Report for ``lhs < rhs``; ties or overlaps are not verified."""
    return InequalityReport(name, claimed, lhs.strictly_below(rhs), lhs)


def _primes(lo, hi):
    """Primes in [lo, hi] as Python ints."""
    if hi < 2:
        return []
    t = primes_up_to(max(hi, 2))
    ps = t.primes
    return [int(p) for p in ps[np.searchsorted(ps, lo) :]]


def euler_product_partial(limit, precision_bits=DEFAULT_PRECISION):
    """prod over primes 3 <= p < limit of (1 - 1/(p-1)^2)."""
    if limit < 3:
        raise DomainError("euler_product_partial needs limit >= 3")
    lo = hi = Fraction(1)
    for p in _primes(3, limit - 1):
        f = 1 - Fraction(1, (p - 1) ** 2)
        lo = round_down(lo * f, precision_bits)
        hi = round_up(hi * f, precision_bits)
    return CertifiedInterval(lo, hi, f"prod_{{3<=p<{limit}}} (1 - 1/(p-1)^2)")


def _positive_sum(terms, prec):
    lo = hi = Fraction(0)
    for term in terms:
        lo = round_down(lo + term, prec)
        hi = round_up(hi + term, prec)
    return lo, hi


def pair_tail_sum(T, precision_bits=DEFAULT_PRECISION):
    """sum over primes 3 <= p <= T+1 of 2/((p-2)(p+1))."""
    if T < 3:
        if T == 2:
            return CertifiedInterval(0, 0, "empty sum")
        raise DomainError("pair_tail_sum needs T >= 3")
    terms = (Fraction(2, (p - 2) * (p + 1)) for p in _primes(3, T + 1))
    lo, hi = _positive_sum(terms, precision_bits)
    return CertifiedInterval(lo, hi, f"sum_{{3<=p<={T + 1}}} 2/((p-2)(p+1))")


def squarefree_flags(n):
    """Boolean array ``f`` with ``f[d]`` true iff d (1 <= d <= n) is squarefree."""
    f = np.ones(n + 1, dtype=bool)
    f[0] = False
    for p in range(2, math.isqrt(n) + 1):
        f[p * p :: p * p] = False
    return f


def sqfree_parity_sum(T, parity, precision_bits=DEFAULT_PRECISION):
    """Squarefree reciprocal-square sums split by parity.

    ``even``: sum of 1/d^2 over even squarefree d <= T.
    ``odd``: sum of 1/(2 d^2) over odd squarefree d <= T + 1.
    """
    if T < 1:
        raise DomainError("sqfree_parity_sum needs T >= 1")
    if parity == "even":
        sf = squarefree_flags(T)
        terms = (Fraction(1, d * d) for d in range(2, T + 1, 2) if sf[d])
        label = f"sum_{{d<={T}, d even, squarefree}} 1/d^2"
    elif parity == "odd":
        sf = squarefree_flags(T + 1)
        terms = (Fraction(1, 2 * d * d) for d in range(1, T + 2, 2) if sf[d])
        label = f"sum_{{d<={T + 1}, d odd, squarefree}} 1/(2d^2)"
    else:
        raise DomainError(f"parity must be 'even' or 'odd', not {parity!r}")
    lo, hi = _positive_sum(terms, precision_bits)
    return CertifiedInterval(lo, hi, label)


def first_primes(count):
    bound = 16
    while True:
        ps = primes_up_to(bound).primes
        if ps.size >= count:
            return [int(p) for p in ps[:count]]
        bound *= 2


def primorial_log_bounds(precision_bits=DEFAULT_PRECISION):
    """(log10 W, E * log10 W) with W = prod of primes < 50, E = prod of the first 43 primes."""
    W = math.prod(_primes(2, 49))
    E = math.prod(first_primes(43))
    log10_W = log10(W, precision_bits).labelled("log10(prod_{p<50} p)")
    exponent = (log10_W * E).round_out(precision_bits).labelled("E * log10(W)")
    return log10_W, exponent


def telescoping_tail(start, coefficient=2):
    """Exact value of sum_{n >= start} c*(1/(n-2) - 1/(n-1)) = c/(start-2)."""
    if start < 3:
        raise DomainError("telescoping tail needs start >= 3")
    return Fraction(coefficient, start - 2)


def _golden_ok(iv, golden, relative=False):
    ref = Fraction(Decimal(golden))
    tol = GOLDEN_REL_TOL * abs(ref) if relative else GOLDEN_ABS_TOL
    numeric = iv.lo - tol <= ref <= iv.hi + tol and iv.width <= tol
    mantissa = golden.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
    printed = format_decimal(iv.mid, len(mantissa), "nearest")
    return numeric and Decimal(printed) == Decimal(golden)


def golden_reports(precision_bits=DEFAULT_PRECISION):
    """One report per reference computation: value enclosed and printed digits match."""
    out = []
    specs = [
        ("euler_product", "prod_{3<=p<5000}(1-1/(p-1)^2) = 0.660175738989977",
         lambda: euler_product_partial(5000, precision_bits)),
        ("pair_sum", "sum_{3<=p<=20001} 2/((p-2)(p+1)) = 0.727089417741948",
         lambda: pair_tail_sum(20000, precision_bits)),
        ("sqfree_even", "sum_{d<=5000 even} mu(d)^2/d^2 = 0.303923082993008",
         lambda: sqfree_parity_sum(5000, "even", precision_bits)),
        ("sqfree_odd", "sum_{d<=5001 odd} mu(d)^2/(2d^2) = 0.607886600147474",
         lambda: sqfree_parity_sum(5000, "odd", precision_bits)),
    ]
    for name, claimed, compute in specs:
        iv = compute()
        out.append(InequalityReport(name, claimed, _golden_ok(iv, GOLDEN[name]), iv))
    log10_W, exponent = primorial_log_bounds(precision_bits)
    ok = _golden_ok(log10_W, GOLDEN["log10_W"]) and _golden_ok(
        exponent, GOLDEN["primorial_exponent"], relative=True
    )
    out.append(
        InequalityReport(
            "primorial_power",
            "log10(W) = 17.7887972765829, E*log10(W) = 1.83383491155388e76",
            ok,
            exponent,
        )
    )
    return out


def verify_red_count_chain(precision_bits=DEFAULT_PRECISION):
    """The eight numeric steps bounding the red-prime count by 6.646 r x/(log x)^2."""
    prec = precision_bits
    c = interval
    reports = []

    euler = euler_product_partial(5000, prec)
    reports.append(report_less("a_euler_product", "prod_{3<=p<5000}(1-1/(p-1)^2) < 0.6602",
                               euler, c("0.6602")))

    T = 20000
    pairs = pair_tail_sum(T, prec)
    tail = telescoping_tail(T + 2)
    total = (pairs + tail).labelled("pair sum + 2/T")
    reports.append(InequalityReport(
        "b_pair_sum", "sum_{p<=T+1} 2/((p-2)(p+1)) < 0.7271 and + 2/T (= 0.0001) < 0.7272",
        pairs.strictly_below(c("0.7271")) and tail == Fraction("0.0001")
        and total.strictly_below(c("0.7272")),
        total,
    ))

    reports.append(report_less("c_exp", "e^0.7272 < 2.0693", exp(c("0.7272"), prec), c("2.0693")))
    reports.append(report_less("d_product", "8.0001 * 0.6602 < 5.2817",
                               c("8.0001") * c("0.6602"), c("5.2817")))
    reports.append(report_less("e_quotient", "2.0693 / 1.5 < 1.3796",
                               c("2.0693") / c("1.5"), c("1.3796")))

    Ts = 5000
    even = sqfree_parity_sum(Ts, "even", prec) + Fraction(1, 2 * Ts)
    odd = sqfree_parity_sum(Ts, "odd", prec) + Fraction(1, 4 * Ts)
    reports.append(InequalityReport(
        "f_squarefree_sums",
        "even sum + 1/(2T) < 0.3041 and odd sum + 1/(4T) < 0.60795",
        even.strictly_below(c("0.3041")) and odd.strictly_below(c("0.60795")),
        (even + odd).labelled("even + odd with tails"),
    ))

    reports.append(report_less("g_combined", "1.3796 * (0.3041 + 0.60795) < 1.2583",
                               c("1.3796") * (c("0.3041") + c("0.60795")), c("1.2583")))
    reports.append(report_less("h_final", "5.2817 * 1.2583 < 6.646",
                               c("5.2817") * c("1.2583"), c("6.646")))
    return reports


def ratio_inequality_holds(p, precision_bits=None):
    """(p-1)/(p-2) < (1 + 1/p) * exp(2/((p-2)(p+1))) for a prime p >= 3.

    The two sides differ by roughly 2/p^4, so the default precision grows
    with p.
    """
    if precision_bits is None:
        precision_bits = 4 * p.bit_length() + 32
    y = Fraction(2, (p - 2) * (p + 1))
    rhs = exp(y, precision_bits) * (1 + Fraction(1, p))
    return interval(Fraction(p - 1, p - 2)).strictly_below(rhs)


def verify_tower_bound(m, precision_bits=DEFAULT_PRECISION):
    """Certify the triple-exponential size bounds for m >= 3 in logged space.

    First step: log log of 1.01624 e^{8m+4} e^{1.01624 e^{8m+4}(8m+4)}, i.e.
    log(1.01624) + (8m+4) + 1.01624 (8m+4) e^{8m+4}, is below e^{10.5m}.

    Second step: L = 8m+4 + 1.01624 e^{8m+4} + e^{e^{10.5m}} satisfies
    log L < e^{10.6m}. With E = e^{10.5m} and s = 8m+4 + 1.01624 e^{8m+4},
    log L = E + log(1 + s e^{-E}) < E + 1 as soon as log s < E, so both
    log s < E and E + 1 < e^{10.6m} are checked.
    """
    if m < 3:
        raise DomainError("the tower bound is only claimed for m >= 3")
    prec = precision_bits
    c = Fraction("1.01624")
    a = 8 * m + 4
    ea = exp(a, prec)
    big_e = exp(Fraction(21, 2) * m, prec)
    first_lhs = (log(c, prec) + a + ea * (c * a)).round_out(prec)
    first_ok = first_lhs.strictly_below(big_e)
    s = (ea * c + a).round_out(prec)
    second_ok = log(s, prec).strictly_below(big_e) and (big_e + 1).strictly_below(
        exp(Fraction(53, 5) * m, prec)
    )
    return InequalityReport(
        f"tower_bound_m{m}",
        f"a < e^e^e^(10.5*{m}) and (K_m-1)Wa < e^e^e^(10.6*{m})",
        first_ok and second_ok,
        first_lhs.labelled("log log of the size bound for a"),
    )


def _check_blocks(lo, hi, holds):
    """Bisect [lo, hi] until ``holds(a, b)`` certifies each block; return failing points."""
    stack = [(lo, hi)]
    failures = []
    while stack:
        a, b = stack.pop()
        if holds(a, b):
            continue
        if a == b:
            failures.append(a)
            continue
        mid = (a + b) // 2
        stack.append((mid + 1, b))
        stack.append((a, mid))
    return failures


def check_classical_inequalities(x_max, k_max, precision_bits=96):
    """Pointwise checks of three classical prime bounds on finite ranges.

    * pi(x) > x/log x for every integer 17 <= x <= x_max;
    * prod_{p<=x} p < e^{1.01624 x} for every 2 <= x <= x_max;
    * p_k <= k (log k + log log k) for every 6 <= k <= k_max.

    The first and third use monotonicity on blocks: pi and p_k are
    nondecreasing and the right-hand sides increase, so one certified
    comparison of the worst corner covers a whole block.
    """
    if x_max < 17 or k_max < 6:
        raise DomainError("need x_max >= 17 and k_max >= 6")
    prec = precision_bits
    limit = max(x_max, 64)
    while True:
        t = primes_up_to(limit)
        if t.count >= k_max:
            break
        limit *= 2
    ps = t.primes

    def pi(x):
        return int(np.searchsorted(ps, x, side="right"))

    # x / log x is increasing for x >= e: on [a, b] the worst case is pi(a) vs b/log a
    failures = _check_blocks(17, x_max, lambda a, b: (interval(b) / log(a, prec)).strictly_below(interval(pi(a))))
    pnt = InequalityReport(
        "rosser_schoenfeld_pi",
        f"pi(x) > x/log x for all integers 17 <= x <= {x_max}",
        not failures,
        (interval(17) / log(17, prec)).labelled("17/log 17"),
    )

    # theta(x) is constant between primes while 1.01624 x grows, so primes suffice
    coeff = Fraction("1.01624")
    theta = CertifiedInterval(0, 0)
    theta_fail = []
    worst = None
    block = 256
    bound_primes = [int(p) for p in ps[: pi(x_max)]]
    for start in range(0, len(bound_primes), block):
        chunk = bound_primes[start : start + block]
        after = (theta + log_int(math.prod(chunk), prec)).round_out(prec)
        if after.strictly_below(interval(coeff * chunk[0])):
            theta = after
            continue
        for p in chunk:
            theta = (theta + log(p, prec)).round_out(prec)
            ratio = theta / (coeff * p)
            if worst is None or ratio.hi > worst.hi:
                worst = ratio
            if not theta.strictly_below(interval(coeff * p)):
                theta_fail.append(p)
    primorial = InequalityReport(
        "rosser_schoenfeld_theta",
        f"prod_{{p<=x}} p < e^(1.01624 x) for all 2 <= x <= {x_max}",
        not theta_fail,
        (worst or theta).labelled("largest theta(p) / (1.01624 p) seen"),
    )

    # p_k increasing and k (log k + log log k) increasing: block [a, b] needs p_b vs RHS(a)
    def dusart_rhs(k):
        lk = log(k, prec)
        return interval(k) * (lk + log(lk, prec))

    failures = _check_blocks(6, k_max, lambda a, b: interval(int(ps[b - 1])).strictly_below(dusart_rhs(a)))
    dusart = InequalityReport(
        "dusart_pk",
        f"p_k <= k(log k + log log k) for all 6 <= k <= {k_max}",
        not failures,
        dusart_rhs(6).labelled("6(log 6 + log log 6)"),
    )
    return [pnt, primorial, dusart]


def verify_final_bound(precision_bits=DEFAULT_PRECISION):
    """The m = 2 size bound, 50 * W * 10^(E log10 W) < 10^(1.834e76), in log10 space.

    Uses the computed log10 W (about 17.7888) for the W factor.
    """
    prec = precision_bits
    log10_W, exponent = primorial_log_bounds(prec)
    cap = interval("1.8339e76")
    total = (log10(50, prec) + log10_W + cap).round_out(prec).labelled("log10(50 W) + 1.8339e76")
    return [
        report_less("final_exponent", "E * log10(W) < 1.8339e76", exponent, cap),
        report_less("final_bound", "log10(50) + log10(W) + 1.8339e76 < 1.834e76",
                    total, interval("1.834e76")),
    ]
