"""
Followed from: https://github.com/cfengine/cf-remote
More: https://youtu.be/U-aIPTS580s
"""
import re
import subprocess
from pathlib import Path
from setuptools import setup

def get_version() -> str:
    """get the last version tag from git, or the package's __version__ outside a tagged checkout

    Returns:
        str: version tag
    """
    try:
        tag = subprocess.run(["git", "describe", "--tags"], stdout=subprocess.PIPE,
                             stderr=subprocess.DEVNULL, check=False).stdout.decode("utf-8").strip()
    except OSError:
        tag = ""
    if validate_version(tag):
        return tag
    init = Path(__file__).parent / "src" / "quower" / "__init__.py"
    return re.search(r'__version__ = "([^"]+)"', init.read_text(encoding="utf-8")).group(1)

def validate_version(version: str) -> bool:
    """Validate Version (example: 1.0.1)

    Args:
        version (str): version

    Returns:
        bool: if it validates, returns True, else False
    """
    pattern = r'\d+\.\d+\.\d+'
    return bool(re.match(pattern, version))


# get version
quower_version = get_version()
# version validation
assert validate_version(quower_version)
# setup
setup(version=quower_version)
