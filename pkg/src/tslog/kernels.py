"""Backend selection for the hot numerical kernels.

The compiled extension is used when it was built and importable; setting
``TSLOG_PURE_PYTHON=1`` forces the pure-Python implementation.
"""

import os

from tslog import _pykernels

python_backend = _pykernels
compiled_backend = None

try:
    from tslog import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("TSLOG_PURE_PYTHON", "") in ("", "0"):
    _active = compiled_backend
else:
    _active = _pykernels

BACKEND = _active.BACKEND
weighted_sum = _active.weighted_sum
triple_extrema = _active.triple_extrema
slope_extrema = _active.slope_extrema

__all__ = [
    "BACKEND",
    "compiled_backend",
    "python_backend",
    "slope_extrema",
    "triple_extrema",
    "weighted_sum",
]
