"""Builds the optional compiled kernel extension.

The package is fully functional without it; factorid._kernels falls back to
the pure-Python implementations at import time. Build in place with

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "factorid._kernels._ckernels",
                sources=["src/factorid/_kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
