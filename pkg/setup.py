"""Build script for the optional Cython kernels.

The extension needs Cython and the GMP headers. It is optional: if either is
missing or the compiler fails, the package installs without it and falls
back to ``siegelfj._pykernels``.
Set ``SIEGELFJ_NO_EXT=1`` to skip the build on purpose.
"""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: could not build {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
if not os.environ.get("SIEGELFJ_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("siegelfj._ckernels", ["src/siegelfj/_ckernels.pyx"],
                       libraries=["gmp"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
