"""Build script: compiles the optional row-reduction accelerator.

The package is pure Python except for valdef.linalg._speedups, a Cython
kernel for exact rational row reduction.  If Cython or a C compiler is
missing the build falls back silently to the pure-Python backend; the
package selects whichever is importable at runtime.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building valdef.linalg._speedups failed ({exc}); "
            "falling back to the pure-Python row-reduction backend",
            file=sys.stderr,
        )


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        ["src/valdef/linalg/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(
    ext_modules=extensions,
    cmdclass={"build_ext": OptionalBuildExt},
)
