"""Factored construction of W and a making iWa a perfect power for 1 <= i < k.

Numbers here are far too large to write down (a has ~10^76 digits for the
k = 50 instance), so everything is carried as prime -> exponent maps and
only small cases are materialised for cross-checking.
"""
from dataclasses import dataclass
import hashlib
import math

from .errors import DomainError
from .interval import DEFAULT_PRECISION, CertifiedInterval, log10
from .modular import crt, factorize, iroot
from .sieve import primes_up_to

DEFAULT_MATERIALIZE_DIGITS = 10**5

SQUARE_INDICES = (1, 4, 9, 16, 25, 49)
CUBE_INDICES = (3, 24)


class ExponentVector:
    """A positive integer stored as {prime: exponent}; the empty map is 1."""

    __slots__ = ("_factors",)

    def __init__(self, factors=None):
        clean = {}
        for p, e in (factors or {}).items():
            p, e = int(p), int(e)
            if e < 0:
                raise DomainError("exponents must be non-negative")
            if e:
                clean[p] = e
        self._factors = dict(sorted(clean.items()))

    @classmethod
    def from_int(cls, n):
        return cls(factorize(n))

    @property
    def factors(self):
        return dict(self._factors)

    def exponent(self, p):
        return self._factors.get(p, 0)

    def __mul__(self, other):
        out = dict(self._factors)
        for p, e in other._factors.items():
            out[p] = out.get(p, 0) + e
        return ExponentVector(out)

    def __eq__(self, other):
        return isinstance(other, ExponentVector) and self._factors == other._factors

    def __hash__(self):
        return hash(tuple(self._factors.items()))

    def __repr__(self):
        return f"ExponentVector({self._factors})"

    def value(self):
        return math.prod(p**e for p, e in self._factors.items())

    def mod(self, n):
        out = 1 % n
        for p, e in self._factors.items():
            out = out * pow(p, e, n) % n
        return out

    def is_perfect_power_of(self, k):
        return all(e % k == 0 for e in self._factors.values())

    def log10(self, prec=DEFAULT_PRECISION):
        total = CertifiedInterval(0, 0)
        for p, e in self._factors.items():
            total = (total + log10(p, prec + 16) * e).round_out(prec + 16)
        return total.round_out(prec)

    def digest(self):
        text = ",".join(f"{p}^{e}" for p, e in self._factors.items())
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class TargetAssignment:
    """For each index 1 <= i < k, the power iWa must be."""

    k: int
    targets: dict

    def __post_init__(self):
        if set(self.targets) != set(range(1, self.k)):
            raise DomainError(f"targets must cover exactly the indices 1..{self.k - 1}")
        if any(t < 2 for t in self.targets.values()):
            raise DomainError("every target exponent must be at least 2")


@dataclass(frozen=True)
class PowerTupleResult:
    W: ExponentVector
    a: ExponentVector
    k: int
    log10_a: CertifiedInterval


def _first_primes(count):
    bound = 64
    while True:
        ps = primes_up_to(bound).primes
        if ps.size >= count:
            return [int(p) for p in ps[:count]]
        bound *= 2


def primorial(K):
    if K < 2:
        raise DomainError("primorial needs K >= 2")
    return ExponentVector({int(p): 1 for p in primes_up_to(K).primes})


def default_targets(k):
    """Index i gets the i-th prime."""
    if k < 2:
        raise DomainError("need k >= 2")
    ps = _first_primes(k - 1)
    return TargetAssignment(k, {i: ps[i - 1] for i in range(1, k)})


def k50_targets():
    """k = 50: squares for 1,4,9,16,25,49; cubes for 3,24; the other 41 indices
    take the primes 5, 7, ..., p_43 in ascending order."""
    rest = [i for i in range(1, 50) if i not in SQUARE_INDICES and i not in CUBE_INDICES]
    ps = _first_primes(43)[2:]
    targets = {i: 2 for i in SQUARE_INDICES}
    targets.update({i: 3 for i in CUBE_INDICES})
    targets.update(zip(rest, ps))
    return TargetAssignment(50, targets)


def solve_exponents(K, assignment, prec=DEFAULT_PRECISION):
    """Least exponents of a over the primes q <= K, one CRT system per q.

    For each i the exponent of q in iWa is e_q(i) + 1 + alpha_q, which must
    vanish mod targets[i].
    """
    if assignment.k > K + 1:
        raise DomainError(f"tuple length {assignment.k} needs K >= {assignment.k - 1}")
    W = primorial(K)
    index_factors = {i: factorize(i) for i in assignment.targets}
    alphas = {}
    for q in W.factors:
        system = [(-(1 + index_factors[i].get(q, 0)), t) for i, t in assignment.targets.items()]
        alphas[q] = crt(system)[0]
    a = ExponentVector(alphas)
    return PowerTupleResult(W, a, assignment.k, a.log10(prec))


def tuple_element(result, i):
    """i * W * a as an exponent vector."""
    return ExponentVector.from_int(i) * result.W * result.a


def verify_power_tuple(result, assignment, materialize_limit=DEFAULT_MATERIALIZE_DIGITS):
    """Every iWa (1 <= i < k) is a targets[i]-th power.

    Checked on exponent vectors; when iWa has at most ``materialize_limit``
    decimal digits it is also built and its integer root extracted.
    """
    log10_wa = (result.W.log10(64) + result.log10_a).hi
    for i in range(1, result.k):
        target = assignment.targets[i]
        v = tuple_element(result, i)
        if not v.is_perfect_power_of(target):
            return False
        digits = float(log10_wa) + math.log10(i) + 1
        if digits <= materialize_limit:
            n = v.value()
            if iroot(n, target) ** target != n:
                return False
    return True


def admissible_check(offsets):
    """No prime p <= len(offsets) sees every residue class among the offsets.

    Offsets may be ints or :class:`ExponentVector`; the latter are reduced
    mod p without being materialised. Returns ``(admissible, witness_prime)``.
    """
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets):
        raise DomainError("offsets must be distinct")
    if not offsets:
        raise DomainError("need at least one offset")
    k = len(offsets)
    if k < 2:
        return True, None
    for p in primes_up_to(k).primes:
        p = int(p)
        seen = {o.mod(p) if isinstance(o, ExponentVector) else o % p for o in offsets}
        if len(seen) == p:
            return False, p
    return True, None


def tuple_offsets(result, K):
    """{i W a : 1 <= i <= K}, the shifts fed to the admissibility check."""
    return [tuple_element(result, i) for i in range(1, K + 1)]
