"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so any compiler failure downgrades to a pure-Python install
instead of aborting.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hyperball/_kernels/_core.pyx"],
        language_level=3,
    )
    for ext in ext_modules:
        ext.include_dirs = [numpy.get_include()]
        ext.extra_compile_args = ["-O3"]
        ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]
except Exception as exc:  # Cython or numpy missing at build time
    sys.stderr.write(f"hyperball: skipping compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
