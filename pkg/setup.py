import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernel when possible; the package works without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, headers, ...
            warnings.warn(f"compiled kernel not built, using pure Python: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel {ext.name} not built: {exc}")


ext_modules = []
if not os.environ.get("CYCLODENSITY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not found, skipping the compiled kernel")
    else:
        try:
            ext_modules = cythonize(
                [
                    Extension(
                        "cyclodensity._feasible",
                        ["src/cyclodensity/_feasible.pyx"],
                        language="c++",
                        extra_compile_args=["-O3", "-std=c++17"],
                    )
                ],
                compiler_directives={"language_level": "3"},
            )
        except Exception as exc:
            warnings.warn(f"cythonize failed, using pure Python: {exc}")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
