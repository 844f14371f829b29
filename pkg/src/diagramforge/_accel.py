"""Kernel acceleration switch.

Hot numeric kernels in :mod:`diagramforge.geometry` are compiled with numba
when it is importable. Setting ``DIAGRAMFORGE_NO_NUMBA=1`` (or numba's own
``NUMBA_DISABLE_JIT``) selects the pure-Python/NumPy path instead; both paths
run the same source, so results are bit-identical.
"""

import os


def _numba_wanted() -> bool:
    if os.environ.get("DIAGRAMFORGE_NO_NUMBA", "").strip() not in ("", "0"):
        return False
    if os.environ.get("NUMBA_DISABLE_JIT", "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_wanted()

if NUMBA_ENABLED:
    from numba import njit

    def maybe_jit(func):
        # numba dispatchers keep the original under .py_func, which the
        # benchmark uses to time the fallback path in the same process.
        return njit(cache=True)(func)

else:

    def maybe_jit(func):
        return func
