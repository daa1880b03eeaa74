"""Build script: compiles the elimination kernels when Cython is available."""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        ["src/zonotopal/_ckernels.pyx"],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
