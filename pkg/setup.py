import warnings

from setuptools import Extension, setup

# The stepping kernels compile to a small extension; installs without a
# compiler (or Cython) still work and fall back to the numpy implementation
# at import time, so the extension is marked optional.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "adiabatic_dj._kernels._stepper",
                ["src/adiabatic_dj/_kernels/_stepper.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython unavailable; installing with the pure-Python kernels only")
    ext_modules = []

setup(ext_modules=ext_modules)
