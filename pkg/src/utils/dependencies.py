"""Dependency management utilities."""

import importlib
import subprocess
import sys
from typing import Dict, List

# import name -> pip package
REQUIRED_PACKAGES: Dict[str, str] = {
    "numpy": "numpy",
    "scipy": "scipy",
    "networkx": "networkx",
    "galois": "galois",
}

OPTIONAL_PACKAGES: Dict[str, str] = {
    "tqdm": "tqdm",
}


def install_package(package_name: str) -> bool:
    """Install a Python package using pip."""
    try:
        print(f"Installing {package_name}...", file=sys.stderr)
        subprocess.check_call([sys.executable, "-m", "pip", "install", package_name])
        return True
    except subprocess.CalledProcessError:
        print(f"Failed to install {package_name}", file=sys.stderr)
        return False


def missing_packages(packages: Dict[str, str]) -> List[str]:
    missing = []
    for module, package in packages.items():
        try:
            importlib.import_module(module)
        except ImportError:
            missing.append(package)
    return missing


def check_and_install_dependencies(install: bool = False, quiet: bool = False) -> bool:
    """
    Check that the numeric stack imports; optionally pip-install what is missing.

    Optional packages only produce a notice.
    """
    missing = missing_packages(REQUIRED_PACKAGES)
    optional = missing_packages(OPTIONAL_PACKAGES)
    if optional and not quiet:
        print(f"⚠ Optional packages not installed: {', '.join(optional)} (no progress bars)",
              file=sys.stderr)
    if not missing:
        return True

    print(f"\n{'='*60}", file=sys.stderr)
    print("Missing dependencies!", file=sys.stderr)
    print(f"{'='*60}\n", file=sys.stderr)
    for package in missing:
        print(f"  - {package}", file=sys.stderr)

    if not install:
        print("\n💡 Install with:", file=sys.stderr)
        print(f"   {sys.executable} -m pip install {' '.join(missing)}", file=sys.stderr)
        return False

    for package in missing:
        if not install_package(package):
            return False
    importlib.invalidate_caches()
    still_missing = missing_packages(REQUIRED_PACKAGES)
    if still_missing:
        print(f"❌ Still missing after install: {', '.join(still_missing)}", file=sys.stderr)
        return False
    print("✓ Dependencies installed!\n", file=sys.stderr)
    return True
