"""Build script: compiles the optional fast-kernel extension.

The package is fully functional without the extension (a pure-Python
twin of every kernel ships in ``fknichols._kernels_py``); set
``FKNICHOLS_NO_EXT=1`` to skip compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FKNICHOLS_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fknichols._kernels",
                    ["src/fknichols/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
