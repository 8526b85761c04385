"""Select the compiled kernel when available, else the pure-Python one.

Set MULTIMOMENTS_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
support_sum = _kernels_py.support_sum

if not os.environ.get("MULTIMOMENTS_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        support_sum = _kernels.support_sum

__all__ = ["BACKEND", "support_sum"]
