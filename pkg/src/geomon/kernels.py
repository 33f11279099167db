"""Word kernels: the compiled extension when built, else the Python fallback.

``BACKEND`` tells which one was picked; set GEOMON_PURE=1 to force Python.
"""

import os

from . import _kernels_py

if os.environ.get("GEOMON_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

free_reduce = _impl.free_reduce
find_all = _impl.find_all
compose_seeds = _impl.compose_seeds
canonical_rename = _impl.canonical_rename
