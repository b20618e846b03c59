import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("FERRO_NO_EXT"):
    ext_modules = cythonize(
        [Extension(
            "ferro._kernels",
            ["src/ferro/_kernels.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
        )],
        language_level=3,
    )

setup(ext_modules=ext_modules)
