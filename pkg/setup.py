from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize

    exts = cythonize(
        [
            Extension(
                "hybridmimo._kernels._cykernels",
                ["src/hybridmimo/_kernels/_cykernels.pyx"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    # Source tree without Cython: the package falls back to the
    # pure-python kernels at import time.
    exts = []

setup(ext_modules=exts)
