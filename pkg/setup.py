"""Build script for the optional compiled kernel core.

The package works without the extension (a NumPy fallback is selected at
import time); building it just makes the verification sweeps faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "qig._kernels._fastcore",
                ["src/qig/_kernels/_fastcore.pyx"],
                libraries=["m"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
