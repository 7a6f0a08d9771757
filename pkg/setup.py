"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-numpy fallback is selected at
import time); building it makes the pattern-sum and Gowers kernels fast enough
for the larger sweeps.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "mhtkit._core",
                ["src/mhtkit/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
else:
    extensions = []

setup(ext_modules=extensions)
