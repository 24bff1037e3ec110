"""Backend selection for the hot kernels.

``POLISIM_BACKEND=numba`` (default) uses the compiled kernels,
``POLISIM_BACKEND=numpy`` forces the pure-numpy path. When numba is not
importable the numpy path is used regardless. Both paths return bit-identical
results; ``benchmarks/bench_backends.py`` times and cross-checks them.
"""

from __future__ import annotations

import os

from . import numpy_impl

_requested = os.environ.get("POLISIM_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise RuntimeError(f"POLISIM_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba":
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        _impl = numpy_impl
        BACKEND = "numpy"
else:
    _impl = numpy_impl
    BACKEND = "numpy"

goods_market_month = _impl.goods_market_month
match_labor = _impl.match_labor


def get_backend(name: str):
    """Explicit backend module lookup (used by tests and the benchmark)."""
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        from . import numba_impl

        return numba_impl
    raise ValueError(f"unknown backend {name!r}")
