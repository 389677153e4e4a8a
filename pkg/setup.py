"""Build hook for the optional compiled quadrature core.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure here downgrades to a pure-Python
install instead of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dunkl_a2._core_c",
                ["src/dunkl_a2/_core_c.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"dunkl-a2: skipping compiled core ({exc}); numpy fallback will be used")

setup(ext_modules=ext_modules)
