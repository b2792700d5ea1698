"""Build the optional compiled kernels.

The Cython extension is optional: if it cannot be built the package falls
back to the pure-Python kernels at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SEAWORKS_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "seaworks._kernels._ckernels",
                    ["src/seaworks/_kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"seaworks: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
