"""Select the integer kernel backend at import time.

The compiled module is preferred; setting ``K3ISOGENY_PURE=1`` forces the
pure-Python implementation.
"""

import os

from . import _pykernels

BACKEND = "python"
conv = _pykernels.conv
sparse_mul = _pykernels.sparse_mul

if os.environ.get("K3ISOGENY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None
    if _ckernels is not None:
        BACKEND = "cython"
        conv = _ckernels.conv
        sparse_mul = _ckernels.sparse_mul
