"""Build script: compiles the optional Cython kernel extension.

If the extension fails to build or import, the package falls back to the
pure numpy kernels at runtime; nothing else depends on the compiled module.
"""
import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "muontomo._kernels",
        ["src/muontomo/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
