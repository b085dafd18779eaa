import pathlib
import sys

# Make the CMake-built extension importable when pytest runs from the source
# tree without an installed package.
_root = pathlib.Path(__file__).resolve().parents[2]
_build = _root / "build"
if _build.exists():
    sys.path.insert(0, str(_build))
