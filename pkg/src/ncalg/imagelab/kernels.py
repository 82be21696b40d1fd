"""Kernel dispatch: numba when available unless NCALG_DISABLE_NUMBA is set."""
import os

from . import _numpy

_DISABLED = os.environ.get("NCALG_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

if _DISABLED:
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl
        BACKEND = "numba"
    except ImportError:  # numba missing or broken on this platform
        _impl = _numpy
        BACKEND = "numpy"

eval_poly = _impl.eval_poly
sweep_xor_images = _impl.sweep_xor_images
