"""Build script for the optional compiled straightening kernel.

The package is pure Python; the Cython extension only accelerates the
PBW straightening hot loop.  If Cython or a C compiler is missing the
install still succeeds and the pure-Python kernel is used at runtime.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install because the accelerator would not build."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # compiler missing, etc.
            print("kappalg: skipping compiled kernel (%s)" % exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print("kappalg: skipping compiled kernel %s (%s)" % (ext.name, exc))


ext_modules = []
if not os.environ.get("KAPPALG_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("kappalg._straighten_c", ["src/kappalg/_straighten_c.pyx"])],
            language_level=3,
        )
    except ImportError:
        print("kappalg: Cython not available, building without compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
