"""Build script for the optional compiled closure kernel.

The package is pure Python by default.  When Cython and a C++ toolchain are
available, `rdfsupd._closure_native` is compiled and picked up automatically
at import time; otherwise the pure-Python kernel is used.  The extension is
marked optional so a failing compile never breaks installation.
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
                "rdfsupd._closure_native",
                ["src/rdfsupd/_closure_native.pyx"],
                language="c++",
                optional=True,
                extra_compile_args=["-O2", "-std=c++11"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
