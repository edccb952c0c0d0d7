"""
JIT selection for the numeric kernels.

Kernels are written in the numba-compatible subset of Python so the same
source runs either compiled or interpreted. Set ``LNFGRAPH_DISABLE_NUMBA=1``
(or uninstall numba) to force the interpreted path.
"""
import os

DISABLE_ENV = "LNFGRAPH_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested():
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


USING_NUMBA = numba is not None and _numba_requested()


def njit(func):
    """Compile ``func`` with numba when enabled; otherwise return it unchanged.

    Either way the result exposes ``py_func`` so callers (tests, benchmarks)
    can reach the interpreted version explicitly.
    """
    if USING_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    func.py_func = func
    return func
