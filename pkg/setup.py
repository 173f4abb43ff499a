import os

from setuptools import Extension, setup

try:
    if not os.path.exists("src/bfdecide/satsolver/_ccore.pyx"):
        raise ImportError
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "bfdecide.satsolver._ccore",
                ["src/bfdecide/satsolver/_ccore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: the pure-Python solver core is used at runtime instead.
    extensions = []

setup(ext_modules=extensions)
