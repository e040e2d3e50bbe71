"""Build script: compiles the optional _ckernels extension.

The package works without the extension (a pure numpy twin is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"skipping {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
        import numpy
    except ImportError:  # pragma: no cover
        return []
    from setuptools import Extension

    ext = Extension(
        "hyperhs._ckernels",
        ["src/hyperhs/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
