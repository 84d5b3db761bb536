"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when importable; setting
``HLPARK_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels as python_kernels

if os.environ.get("HLPARK_PURE_PYTHON", "") not in ("", "0"):
    compiled_kernels = None
else:
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"


def get_kernels(name: str | None = None):
    """Return the kernel module for ``name`` ("cython", "python" or None for the default)."""
    if name is None:
        return kernels
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("compiled kernels are not available")
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")
