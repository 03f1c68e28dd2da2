"""Kernel selection at import.

The compiled GMP kernel is used when it was built; set
``EZDCONE_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
rref_rows = _kernel_py.rref_rows
matmul_rows = _kernel_py.matmul_rows

if os.environ.get("EZDCONE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        rref_rows = _kernel.rref_rows
        matmul_rows = _kernel.matmul_rows
