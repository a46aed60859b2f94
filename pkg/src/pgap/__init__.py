"""Prime gaps, square-difference-free sets and certified constants.

The hot loops (segmented sieve, window scans, clique search) live in a
compiled extension when it is available and fall back to numpy otherwise;
``pgap.BACKEND`` names the one in use.
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import DomainError, InfeasibleSystemError, InsufficientTableError
from .interval import CertifiedInterval
from .sieve import PrimeTable, SieveConfig, nth_prime, primes_up_to

__all__ = [
    "BACKEND",
    "CertifiedInterval",
    "DomainError",
    "InfeasibleSystemError",
    "InsufficientTableError",
    "PrimeTable",
    "SieveConfig",
    "nth_prime",
    "primes_up_to",
]
