"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so the extension is marked optional and a
failed compile only downgrades performance.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tautclass._kernels._fast",
                ["src/tautclass/_kernels/_fast.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
