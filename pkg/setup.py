from setuptools import setup, Extension

import numpy as np
from Cython.Build import cythonize

extensions = [
    Extension(
        "pscmoea.kernels._core",
        ["src/pscmoea/kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

compiler_directives = {
    "language_level": 3,
    "boundscheck": False,
    "wraparound": False,
    "cdivision": True,
    "nonecheck": False,
    "embedsignature": True,
}

setup(
    ext_modules=cythonize(extensions, compiler_directives=compiler_directives),
)
