"""Kernel backend selection: compiled extension if built, else pure Python.

Set ``NONASSOC_PURE=1`` to force the pure-Python kernels.
"""
import os

from . import _kernels_py

if os.environ.get("NONASSOC_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

IDENTITY_CODES = _kernels_py.IDENTITY_CODES
mul_monomial = _impl.mul_monomial
associator_tensor = _impl.associator_tensor
scan_identity = _impl.scan_identity
