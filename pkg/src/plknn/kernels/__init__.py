"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time.  Set ``PLKNN_BACKEND=numpy`` to
force the fallback (useful for debugging or machines where numba is
unavailable), ``PLKNN_BACKEND=numba`` to require the compiled path, or leave
it unset to use numba when importable.  ``benchmarks/kernel_bench.py``
compares the two.

Both backends expose the same three functions and agree to float64
round-off:

- ``manhattan_pairwise(a, b)``
- ``euclidean_pairwise(a, b)``
- ``prefix_majority(sorted_labels, n_classes)``
"""

import os

from . import _numpy

_requested = os.environ.get("PLKNN_BACKEND", "auto").lower()

if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"PLKNN_BACKEND must be 'numba', 'numpy' or 'auto', got {_requested!r}"
    )

if _requested == "numpy":
    BACKEND = "numpy"
else:
    try:
        from . import _numba

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        BACKEND = "numpy"

_impl = _numba if BACKEND == "numba" else _numpy

manhattan_pairwise = _impl.manhattan_pairwise
euclidean_pairwise = _impl.euclidean_pairwise
prefix_majority = _impl.prefix_majority

__all__ = [
    "BACKEND",
    "manhattan_pairwise",
    "euclidean_pairwise",
    "prefix_majority",
]
