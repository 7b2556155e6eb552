"""Select the quadrature kernel backend at import time.

The compiled extension is preferred; the pure-numpy module is a drop-in
replacement when the extension was not built.  Set NHQUBIT_FORCE_PYTHON=1
to skip the extension (used by the benchmark and for debugging).
"""

import os

if os.environ.get("NHQUBIT_FORCE_PYTHON", "") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND_NAME
