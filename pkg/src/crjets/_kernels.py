"""Kernel selection: compiled fast path when available, pure Python otherwise.

Set CRJETS_BACKEND=python in the environment before import to force the
pure kernel (used by the benchmark and by differential tests).
"""

from __future__ import annotations

import os

from . import _kernel_py

mul_terms = _kernel_py.mul_terms
BACKEND = "python"

if os.environ.get("CRJETS_BACKEND", "").lower() not in ("python", "pure"):
    try:
        from . import _speedups

        mul_terms = _speedups.mul_terms
        BACKEND = "cython"
    except ImportError:
        pass
