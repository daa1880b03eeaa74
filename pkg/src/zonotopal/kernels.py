"""Backend selection for the elimination kernels.

The compiled extension is used when it was built; set
``ZONOTOPAL_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ZONOTOPAL_PURE_PYTHON"):
    from zonotopal import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from zonotopal import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        from zonotopal import _pykernels as _impl

        BACKEND = "python"

bareiss_det = _impl.bareiss_det
ff_rref = _impl.ff_rref

__all__ = ["BACKEND", "bareiss_det", "ff_rref"]
