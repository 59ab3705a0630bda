"""Numba acceleration switch for the hot kernels.

The fire-spread and route-search inner loops are compiled with numba's
``@njit`` when it is importable.  Setting ``FIREROUTE_NUMBA=0`` (or
``false``/``off``/``no``) in the environment selects the pure-NumPy/Python
fallback implementations instead.  Both paths are bit-identical; the
compiled path is just fast enough for 512x512 grids at interactive rates.
"""

import os

ENV_FLAG = "FIREROUTE_NUMBA"


def _numba_requested() -> bool:
    value = os.environ.get(ENV_FLAG, "1").strip().lower()
    return value not in {"0", "false", "off", "no"}


NUMBA_ACTIVE = False
if _numba_requested():
    try:
        from numba import njit as _njit

        NUMBA_ACTIVE = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ACTIVE = False


def jit_kernel(fn):
    """Compile ``fn`` with numba when active, otherwise return it unchanged.

    Kernels decorated with this are written in nopython-compatible style so
    the exact same source runs interpreted when numba is disabled.
    """
    if NUMBA_ACTIVE:
        return _njit(cache=True)(fn)
    return fn
