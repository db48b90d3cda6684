"""Hot numeric kernels with a selectable backend.

The numba backend is used when numba imports cleanly, unless the
environment variable ``ATIYAH_NO_NUMBA`` is set to a non-empty value other
than ``0``. In that case the pure-numpy twins are used. The choice is made
once, at import time; ``BACKEND`` records it.

Both backend modules stay importable on their own
(``atiyah_config.kernels._numpy`` always, ``_numba`` when numba is present)
so they can be benchmarked and cross-checked side by side.
"""
import os

_disabled = os.environ.get("ATIYAH_NO_NUMBA", "") not in ("", "0")

if _disabled:
    from ._numpy import *  # noqa: F401,F403
    BACKEND = "numpy"
else:
    try:
        from ._numba import *  # noqa: F401,F403
        BACKEND = "numba"
    except ImportError:
        from ._numpy import *  # noqa: F401,F403
        BACKEND = "numpy"

__all__ = [
    "BACKEND",
    "det",
    "permanent",
    "jacobi_eigh",
    "lift_table",
    "sym_coeffs",
    "coefficient_matrix",
    "gram_from_coeffs",
    "config_matrices",
]
