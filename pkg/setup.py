import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the numpy descent path is used
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("TAU_ENGINE_PURE_PYTHON"):
    ext = Extension(
        "tau_engine.brieskorn._kernel",
        ["src/tau_engine/brieskorn/_kernel.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", "-fopenmp"],
        extra_link_args=["-fopenmp"],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
