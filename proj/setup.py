"""Builds the compiled extension by delegating to the project's CMake setup.

The wheel-facing configuration lives in pyproject.toml; this file only
teaches setuptools how to produce mtvrp._mtvrp via CMake.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        out_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DSKBUILD=ON",  # wheel mode: extension only, no tests or CLI
                "-DMTVRP_PYTHON=ON",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_mtvrp", "-j", "2"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("mtvrp._mtvrp")],
    cmdclass={"build_ext": CMakeBuild},
)
