"""Build script.

The compiled kernel in src/cellkit/_kernels/_fast.pyx is optional: if Cython
or a C compiler is missing, or compilation fails for any reason, the package
installs without it and the pure-Python kernels are used instead.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cellkit/_kernels/_fast.pyx"],
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        if sys.platform != "win32":
            ext.extra_compile_args = ["-O3"]
except Exception as exc:  # noqa: BLE001 - any build-chain problem means "skip the ext"
    print("cellkit: skipping compiled kernel (%s)" % exc, file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
