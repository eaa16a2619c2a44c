import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to the
# pure-Python implementations in poscat._kernels.pure when the extension is
# missing. Set POSCAT_NO_EXT=1 to skip the build entirely.
ext_modules = []
if os.environ.get("POSCAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "poscat._kernels._speedups",
                    ["src/poscat/_kernels/_speedups.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
