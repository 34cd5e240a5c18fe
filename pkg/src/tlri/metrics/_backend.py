"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the pure numpy
fallback is otherwise used transparently. ``TLRI_KERNELS=python`` forces
the fallback (useful for the backend-parity tests and benchmarks).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TLRI_KERNELS", "").lower() == "python":
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"
