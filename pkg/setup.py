import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QZETA_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "qzeta._ckernels",
            ["src/qzeta/_ckernels.pyx"],
            libraries=["gmp"],
            extra_compile_args=["-O2"],
            optional=True,  # fall back to the pure-Python kernels if GMP headers are missing
        )
        ext_modules = cythonize([ext], compiler_directives={"language_level": 3})

setup(ext_modules=ext_modules)
