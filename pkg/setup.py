"""Builds the optional Cython kernel; installs pure Python if that fails."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: skipping compiled kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc})")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "conemom._quadcore",
        ["src/conemom/_quadcore.pyx"],
        extra_compile_args=["-O2", "-fno-fast-math", "-ffp-contract=off"],
    )
    try:
        return cythonize([ext], language_level=3, quiet=True)
    except Exception as exc:
        print(f"warning: cythonize failed, using pure Python ({exc})")
        return []


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
