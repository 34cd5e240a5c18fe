from setuptools import setup, Extension

import numpy as np

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "tlri.metrics._ckernels",
                ["src/tlri/metrics/_ckernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python kernels are selected at import time when the
    # compiled extension is unavailable.
    extensions = []

setup(ext_modules=extensions)
