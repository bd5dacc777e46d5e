"""Build script for the optional compiled kernel extension.

The package is pure Python plus one Cython extension holding the hot
rate-matrix assembly loops.  If Cython or a C compiler is unavailable the
extension is skipped and the numpy kernels are used at runtime instead.
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "vsckin._kernels._cy_impl",
                ["src/vsckin/_kernels/_cy_impl.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"vsckin: skipping compiled kernels ({exc}); "
                     "numpy fallback will be used\n")

setup(ext_modules=ext_modules)
