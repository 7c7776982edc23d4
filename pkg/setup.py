"""Build script for the optional compiled kernels.

The package works without the extension (a pure NumPy fallback is selected
at import time), so a missing compiler or Cython only costs speed.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [
            Extension(
                "pnsqkd._kernels._ext",
                ["src/pnsqkd/_kernels/_ext.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_9_API_VERSION")],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
