"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise (or
when ``QZETA_PURE_PYTHON`` is set to a non-empty value other than ``0``) the
pure-Python ``_pykernels`` module is used.  Both expose the same functions.
"""

import os

from . import _pykernels

pure = _pykernels

if os.environ.get("QZETA_PURE_PYTHON", "") not in ("", "0"):
    active = _pykernels
else:
    try:
        from . import _ckernels as active
    except ImportError:
        active = _pykernels

BACKEND = active.BACKEND

mul_trunc = active.mul_trunc
inv_trunc = active.inv_trunc
det_real = active.det_real
det_complex = active.det_complex


def compiled():
    """The compiled module, or ``None`` if it is not built."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels
