"""Kernel selection: compiled extension if it was built, else pure Python.

Set ``TAMECERT_PURE=1`` to force the Python kernels (used by the benchmark
and by the parity tests).
"""
import os

from . import _pykernels

kernels = _pykernels
if not os.environ.get("TAMECERT_PURE"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND
bareiss_echelon = kernels.bareiss_echelon
berkowitz = kernels.berkowitz
weyl_mul_terms = kernels.weyl_mul_terms
weyl_mul_euler = kernels.weyl_mul_euler
