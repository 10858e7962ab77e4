"""Build the optional compiled kernel extension.

The package works without it (a pure Python fallback is selected at
import time); set FO2_NO_EXTENSION=1 to skip compilation entirely.

Developers: python setup.py build_ext --inplace
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FO2_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "fo2color._core._speedups",
                    ["src/fo2color/_core/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
