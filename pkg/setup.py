"""Build script: compiles the optional quadrature kernel extension.

The package works without the extension (a pure-numpy fallback is selected
at import time), so any failure here only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/nhqubit/_kernels.pyx",
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
    for ext in ext_modules:
        ext.include_dirs.append(np.get_include())
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=ext_modules)
