"""Build script: compiles the hot simulation kernel when Cython + a C
toolchain are available, otherwise installs pure Python only (the package
falls back to the reference engine at import time)."""

import os

from setuptools import Extension, setup


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    npy_random_lib = os.path.join(os.path.dirname(np.random.__file__), "lib")
    ext = Extension(
        "slicelab._kernel",
        ["src/slicelab/_kernel.pyx"],
        include_dirs=[np.get_include()],
        library_dirs=[npy_random_lib],
        libraries=["npyrandom"],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
