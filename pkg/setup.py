import os

from setuptools import Extension, setup

# The compiled kernel is optional: set WEYLQ_PURE=1 to skip it and run on
# the pure Python fallback selected at import time.
ext_modules = []
if os.environ.get("WEYLQ_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "weylq._speedups",
                    ["src/weylq/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
