import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EVOFUZZ_PURE_PYTHON"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "evofuzz._kernels",
                    ["src/evofuzz/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: the package falls back to the numpy kernels.
        ext_modules = []

setup(ext_modules=ext_modules)
