"""Select the kernel implementation at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise, or
when ``SIEGELFJ_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pykernels`` module is used. Both expose the same functions.
"""
import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if not os.environ.get("SIEGELFJ_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def compiled_available():
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
