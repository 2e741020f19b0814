"""
Bump the release version in pyproject.toml and in ramanujan_nagell/version.py.

The engine version is written into every certificate's meta block, so the two
must never drift apart.
"""
import re
import sys
from pathlib import Path

from tomlkit import dumps, parse

VERSION_FILE = Path("ramanujan_nagell") / "version.py"

if len(sys.argv) != 2:
    print("Usage: python update_pyproject_version.py <new_version>")
    sys.exit(1)

new_version = sys.argv[1]
if not re.fullmatch(r"\d+\.\d+\.\d+", new_version):
    print(f"Error: '{new_version}' is not a MAJOR.MINOR.PATCH version")
    sys.exit(1)

data = parse(Path("pyproject.toml").read_text())
if "project" not in data or "version" not in data["project"]:
    print("Error: version field not found in pyproject.toml")
    sys.exit(1)
data["project"]["version"] = new_version
Path("pyproject.toml").write_text(dumps(data))

VERSION_FILE.write_text(f'__version__ = "{new_version}"\n')

print(f"Updated pyproject.toml and {VERSION_FILE} to version {new_version}")
