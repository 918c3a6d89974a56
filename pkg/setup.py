"""Build script for the optional compiled kernel core.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile should not abort installation.
"""
import sys

from setuptools import Extension, setup


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        print("gsnetopt: Cython/NumPy unavailable, skipping compiled kernels",
              file=sys.stderr)
        return []
    ext = Extension(
        "gsnetopt.kernels._core",
        ["src/gsnetopt/kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions())
