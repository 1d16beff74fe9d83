"""Build the `terqf_py` extension module by delegating to cargo.

Neither maturin nor setuptools-rust is assumed to be installed; a plain
setuptools Extension with a custom build_ext step keeps
`pip install -e . --no-build-isolation` working with just setuptools.
"""

import os
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

CRATE_DIR = Path(__file__).parent.resolve()


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        env = dict(os.environ, PYO3_PYTHON=sys.executable)
        subprocess.run(
            [
                "cargo",
                "build",
                "--release",
                "--manifest-path",
                str(CRATE_DIR / "Cargo.toml"),
            ],
            check=True,
            env=env,
        )
        target_dir = CRATE_DIR.parent.parent / "target" / "release"
        for name in ("libterqf_py.so", "libterqf_py.dylib", "terqf_py.dll"):
            built = target_dir / name
            if built.exists():
                break
        else:
            raise FileNotFoundError(f"no built cdylib under {target_dir}")
        destination = Path(self.get_ext_fullpath(ext.name))
        destination.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, destination)


setup(
    ext_modules=[Extension("terqf_py", sources=[])],
    cmdclass={"build_ext": CargoBuildExt},
)
