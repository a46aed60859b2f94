import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pgap import _backend
from pgap.sieve import primes_up_to

TABLE_LIMIT = 2_200_000


@pytest.fixture(scope="session")
def table():
    return primes_up_to(TABLE_LIMIT)


@pytest.fixture(scope="session")
def small_table():
    return primes_up_to(100_000)


def _kernel_sets():
    sets = [_backend.python_kernels]
    if _backend.compiled_kernels is not None:
        sets.append(_backend.compiled_kernels)
    return sets


@pytest.fixture(params=_kernel_sets(), ids=lambda k: k.NAME)
def kernels(request):
    return request.param
