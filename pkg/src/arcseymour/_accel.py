"""Backend selection for the integer kernels.

Set ``ARCSEYMOUR_BACKEND=numpy`` to bypass numba and run the vectorized
numpy fallbacks instead. Any other value (or unset) uses numba when it
imports cleanly.
"""

import os

BACKEND_ENV = "ARCSEYMOUR_BACKEND"


def _dummy_njit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrapper(f):
        return f

    return wrapper


def _probe():
    if os.environ.get(BACKEND_ENV, "").strip().lower() == "numpy":
        return False, _dummy_njit
    try:
        import numba
    except ImportError:
        return False, _dummy_njit
    return True, numba.njit


HAVE_NUMBA, njit = _probe()


def backend() -> str:
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"
