"""Build script: compiles the optional propagation kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so any failure here downgrades to a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("tcnsolve._core", ["src/tcnsolve/_core.pyx"])],
        language_level=3,
    )
except Exception as e:  # pragma: no cover
    print(f"warning: building without the compiled kernel ({e})", file=sys.stderr)

setup(ext_modules=ext_modules)
