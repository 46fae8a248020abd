"""Kernel selection: compiled extension when available, pure Python otherwise.

Set IWADEC_FORCE_PYTHON_KERNEL=1 to skip the extension (used by the benchmark
and by tests that pin a backend).
"""

import os

if os.environ.get("IWADEC_FORCE_PYTHON_KERNEL") == "1":
    from . import _fallback as kernel
else:
    try:
        from . import _speedups as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as kernel

BACKEND = kernel.BACKEND
bareiss_int = kernel.bareiss_int
bareiss_poly = kernel.bareiss_poly
cyc_mul_int = kernel.cyc_mul_int
poly_trim = kernel.poly_trim

__all__ = ["BACKEND", "bareiss_int", "bareiss_poly", "cyc_mul_int", "poly_trim", "kernel"]
