"""Build the optional compiled Weyl-product kernel.

If Cython or a C compiler is unavailable the package installs without it and
falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/conequant/_ckernel.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception:  # pragma: no cover - build environment without Cython
    ext_modules = []

setup(ext_modules=ext_modules)
