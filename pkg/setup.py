"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python twin of the kernel is
selected at import time), so any build failure here is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("iwadec._core._speedups", ["src/iwadec/_core/_speedups.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - cython missing on exotic hosts
    print(f"iwadec: skipping compiled kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
