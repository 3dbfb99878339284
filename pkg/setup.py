"""Build script.

The compiled kernel module is optional: when Cython (or a C compiler) is
missing, the build still succeeds and the package falls back to the pure
Python kernels at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/kmlab/_ckernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
