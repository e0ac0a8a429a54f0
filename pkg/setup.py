"""Build script. The compiled kernel is optional: set PIPOW_PURE=1 (or
build without Cython/a C compiler) to install the pure-Python package;
the import-time backend selection falls back automatically."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PIPOW_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pipow/_kernel.pyx"],
            compiler_directives={"language_level": "3"},
        )
        for ext in ext_modules:
            ext.extra_compile_args = ["-O3"]
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
