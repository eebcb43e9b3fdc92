"""Numba/numpy backend selection for the hot kernels.

The environment variable ``ZETADIST_BACKEND`` picks the implementation of the
inner-loop kernels:

* ``numba``  -- require numba, raise if it cannot be imported;
* ``numpy``  -- pure-numpy vectorized kernels, no JIT;
* unset     -- numba when importable, numpy otherwise.

``benchmarks/bench_kernels.py`` compares the two paths.
"""

import os
import warnings

_requested = os.environ.get("ZETADIST_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"ZETADIST_BACKEND={_requested!r} not understood (use 'numba' or 'numpy')"
    )

HAVE_NUMBA = False
if _requested != "numpy":
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise
        warnings.warn("numba not importable; falling back to numpy kernels")

USE_NUMBA = HAVE_NUMBA and _requested != "numpy"
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """numba.njit when the numba backend is active, identity decorator otherwise."""
    if USE_NUMBA:
        from numba import njit as _njit

        return _njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def wrap(f):
        return f

    return wrap
