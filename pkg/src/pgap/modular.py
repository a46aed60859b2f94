"""Small exact helpers: CRT, trial-division factoring, integer roots."""
import math

from .errors import DomainError, InfeasibleSystemError


def crt(congruences):
    """Least non-negative x with x = r (mod n) for every (r, n) pair.

    Moduli need not be coprime; incompatible pairs raise
    :class:`InfeasibleSystemError`. Returns ``(x, lcm)``.
    """
    x, mod = 0, 1
    for r, n in congruences:
        if n < 1:
            raise DomainError("moduli must be positive")
        r %= n
        g = math.gcd(mod, n)
        if (r - x) % g:
            raise InfeasibleSystemError(f"x = {x} (mod {mod}) contradicts x = {r} (mod {n})")
        # x + mod * k = r (mod n)  ->  k = (r - x)/g * inv(mod/g) (mod n/g)
        step = n // g
        k = ((r - x) // g * pow(mod // g, -1, step)) % step if step > 1 else 0
        x += mod * k
        mod *= step
        x %= mod
    return x, mod


def factorize(n):
    """Prime factorisation of a positive integer as a dict {p: e}."""
    if n < 1:
        raise DomainError("factorize needs a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n):
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def iroot(n, k):
    """Floor of the k-th root of a non-negative integer."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_perfect_power_of(n, k):
    r = iroot(n, k)
    return r**k == n
