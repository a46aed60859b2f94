"""Rational interval arithmetic with outward dyadic rounding.

Endpoints are :class:`fractions.Fraction`. The four basic operations are
exact; ``round_out`` snaps endpoints outward onto a dyadic grid of a given
number of significant bits so that long sums and products stay small.
``exp`` and ``log`` use series with explicit remainder bounds and never touch
floating point.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import functools

DEFAULT_PRECISION = 192


def _shift_exponent(q, prec):
    num = abs(q.numerator)
    return prec - (num.bit_length() - q.denominator.bit_length())


def round_down(q, prec):
    """Largest dyadic ``m / 2**e`` <= q with about ``prec`` significant bits."""
    q = Fraction(q)
    if q == 0 or q.denominator & (q.denominator - 1) == 0 and abs(q.numerator).bit_length() <= prec:
        return q
    e = _shift_exponent(q, prec)
    if e >= 0:
        return Fraction((q.numerator << e) // q.denominator, 1 << e)
    return Fraction((q.numerator // (q.denominator << -e)) << -e)


def round_up(q, prec):
    return -round_down(-Fraction(q), prec)


@dataclass(frozen=True)
class CertifiedInterval:
    """Closed interval ``[lo, hi]`` known to contain some real value."""

    lo: Fraction
    hi: Fraction
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value, description=""):
        v = Fraction(value)
        return cls(v, v, description)

    def labelled(self, description):
        return CertifiedInterval(self.lo, self.hi, description)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, value):
        return self.lo <= Fraction(value) <= self.hi

    def contains_interval(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def round_out(self, prec=DEFAULT_PRECISION):
        return CertifiedInterval(round_down(self.lo, prec), round_up(self.hi, prec), self.description)

    def strictly_below(self, other):
        """True iff every point of self is < every point of other."""
        return self.hi < _coerce(other).lo

    def __add__(self, other):
        o = _coerce(other)
        return CertifiedInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        o = _coerce(other)
        ends = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedInterval(min(ends), max(ends))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * CertifiedInterval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __repr__(self):
        label = f" {self.description!r}" if self.description else ""
        return f"CertifiedInterval[{format_decimal(self.lo, 20, 'down')}, {format_decimal(self.hi, 20, 'up')}]{label}"


def _coerce(x):
    if isinstance(x, CertifiedInterval):
        return x
    return CertifiedInterval.exact(x)


def interval(lo, hi=None, description=""):
    """Build an interval; strings such as ``"0.6602"`` are read exactly."""
    lo = Fraction(lo)
    return CertifiedInterval(lo, lo if hi is None else Fraction(hi), description)


def _fixed(q, w):
    """(floor, ceil) of q * 2**w for a rational q."""
    n = q.numerator << w
    return n // q.denominator, -((-n) // q.denominator)


def _exp_nonneg(y, prec):
    """Bounds ``(lo, hi)`` on exp(y) for a rational ``y >= 0``.

    Taylor series in fixed point with ``w`` fractional bits, after halving
    the argument ``s`` times, then ``s`` squarings.
    """
    if y == 0:
        return Fraction(1), Fraction(1)
    s = max(0, y.numerator.bit_length() - y.denominator.bit_length() + 2)
    w = prec + s + 24
    zlo, zhi = _fixed(y / (1 << s), w)  # z <= 1/2
    one = 1 << w
    lo = hi = tlo = thi = one
    j = 0
    while thi > 1:
        j += 1
        tlo = (tlo * zlo) // (j << w)
        thi = -((-thi * zhi) // (j << w))
        lo += tlo
        hi += thi
    # remainder after term j is at most term_j * (z/(j+1)) / (1 - z/(j+2)) < term_j
    hi += thi
    for _ in range(s):
        lo = (lo * lo) >> w
        hi = -((-hi * hi) >> w)
    return round_down(Fraction(lo, one), prec), round_up(Fraction(hi, one), prec)


def _exp_bounds(q, prec):
    q = Fraction(q)
    if q >= 0:
        return _exp_nonneg(q, prec)
    lo, hi = _exp_nonneg(-q, prec + 4)
    return round_down(1 / hi, prec), round_up(1 / lo, prec)


def exp(x, prec=DEFAULT_PRECISION):
    """Enclosure of exp over an interval (or a single rational)."""
    x = _coerce(x)
    lo = _exp_bounds(x.lo, prec)[0]
    hi = _exp_bounds(x.hi, prec)[1]
    return CertifiedInterval(lo, hi)


def _atanh_bounds(z, prec):
    """Bounds on atanh(z) for rational ``|z| <= 1/3``, by its odd power series."""
    if z == 0:
        return Fraction(0), Fraction(0)
    if z < 0:
        lo, hi = _atanh_bounds(-z, prec)
        return -hi, -lo
    w = prec + 24
    zlo, zhi = _fixed(z, w)
    z2lo = (zlo * zlo) >> w
    z2hi = -((-zhi * zhi) >> w)
    plo, phi = zlo, zhi  # z^(2j+1) in fixed point
    lo, hi = zlo, zhi
    j = 0
    while phi > 1:
        j += 1
        plo = (plo * z2lo) >> w
        phi = -((-phi * z2hi) >> w)
        lo += plo // (2 * j + 1)
        hi += -((-phi) // (2 * j + 1))
    # tail sum_{i>j} z^(2i+1)/(2i+1) <= z^(2j+3)/((2j+3)(1-z^2)) < phi for z^2 <= 1/9
    hi += phi + 1
    one = 1 << w
    return round_down(Fraction(lo, one), prec), round_up(Fraction(hi, one), prec)


@functools.lru_cache(maxsize=None)
def _log2_bounds(prec):
    lo, hi = _atanh_bounds(Fraction(1, 3), prec + 8)
    return round_down(2 * lo, prec + 4), round_up(2 * hi, prec + 4)


def _log_bounds(q, prec):
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    u = q / (1 << k) if k >= 0 else q * (1 << -k)
    # u in (1/2, 2); move into [2/3, 4/3]
    if u > Fraction(4, 3):
        u /= 2
        k += 1
    elif u < Fraction(2, 3):
        u *= 2
        k -= 1
    z = (u - 1) / (u + 1)
    guard = prec + 8 + abs(k).bit_length()
    alo, ahi = _atanh_bounds(z, guard)
    l2lo, l2hi = _log2_bounds(guard)
    if k >= 0:
        lo, hi = k * l2lo + 2 * alo, k * l2hi + 2 * ahi
    else:
        lo, hi = k * l2hi + 2 * alo, k * l2lo + 2 * ahi
    return round_down(lo, prec), round_up(hi, prec)


def log(x, prec=DEFAULT_PRECISION):
    """Enclosure of the natural logarithm over a positive interval."""
    x = _coerce(x)
    if x.lo <= 0:
        raise ValueError("log needs a strictly positive interval")
    return CertifiedInterval(_log_bounds(x.lo, prec)[0], _log_bounds(x.hi, prec)[1])


def log_int(n, prec=DEFAULT_PRECISION):
    """log of a possibly huge positive integer, read from its leading bits."""
    n = int(n)
    if n <= 0:
        raise ValueError("log needs a positive integer")
    extra = n.bit_length() - (prec + 32)
    if extra <= 0:
        return log(n, prec)
    top = n >> extra
    inner = log(CertifiedInterval(top, top + 1), prec + 8)
    shift = log(2, prec + 8) * extra
    return (inner + shift).round_out(prec)


@functools.lru_cache(maxsize=None)
def _log10_const(prec):
    return log(10, prec)


def log10(x, prec=DEFAULT_PRECISION):
    x = _coerce(x)
    return (log(x, prec + 8) / _log10_const(prec + 8)).round_out(prec)


def power(base, exponent, prec=DEFAULT_PRECISION):
    """base**exponent as exp(exponent * log(base)) for a positive base."""
    return exp((log(base, prec + 16) * _coerce(exponent)).round_out(prec + 16), prec)


def format_decimal(q, digits=20, direction="nearest"):
    """Decimal string of ``q`` with ``digits`` significant digits.

    ``direction`` is ``"down"`` (toward -inf), ``"up"`` (toward +inf) or
    ``"nearest"`` (half away from zero). Exponents outside [-6, 21) use
    ``e`` notation.
    """
    q = Fraction(q)
    if q == 0:
        return "0"
    neg = q < 0
    a = -q if neg else q
    e = len(str(a.numerator)) - len(str(a.denominator))
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    scaled = a * Fraction(10) ** (digits - 1 - e)
    if direction == "nearest":
        m = int(scaled + Fraction(1, 2))
    elif (direction == "up") != neg:
        m = -((-scaled.numerator) // scaled.denominator)
    else:
        m = scaled.numerator // scaled.denominator
    if m >= 10**digits:
        m //= 10  # rounding carried into a new digit; the dropped digit is 0
        e += 1
    s = str(m).rjust(digits, "0")
    if -6 <= e < 21:
        if e >= digits - 1:
            body = s + "0" * (e - digits + 1)
        elif e >= 0:
            body = s[: e + 1] + "." + s[e + 1 :]
        else:
            body = "0." + "0" * (-e - 1) + s
        if "." in body:
            body = body.rstrip("0").rstrip(".")
    else:
        mant = s[0] + ("." + s[1:]).rstrip("0").rstrip(".") if digits > 1 else s
        body = f"{mant}e{e}"
    return ("-" if neg else "") + body
