"""Build the optional Cython kernel.

The package works without it; set MULTIMOMENTS_NO_EXT=1 to skip compilation.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MULTIMOMENTS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("multimoments._kernels", ["src/multimoments/_kernels.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False},
        )

setup(ext_modules=ext_modules)
