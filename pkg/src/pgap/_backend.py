"""Select the compiled kernels when available, else the numpy fallback.

Set ``PGAP_PURE=1`` in the environment to force the fallback.
"""
import os

from . import _pykernels as python_kernels

compiled_kernels = None
if not os.environ.get("PGAP_PURE"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels

sieve_segment = kernels.sieve_segment
window_min_max = kernels.window_min_max
longest_run = kernels.longest_run
square_shift_hits = kernels.square_shift_hits
max_clique = kernels.max_clique

BACKEND = kernels.NAME
