"""Builds the optional compiled kernel extension.

The package is fully functional without it; slimrect._kernels falls back to
the numpy reference implementation when the extension is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "slimrect._kernels._fast",
                sources=["src/slimrect/_kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
