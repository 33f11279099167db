from setuptools import setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(["src/geomon/_kernels.pyx"], language_level=3, quiet=True)
except ImportError:  # the pure-Python fallback is used instead
    ext_modules = []

setup(ext_modules=ext_modules)
