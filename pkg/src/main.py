#!/usr/bin/env python3
"""
SimplexForge - Universal launcher script
Works on macOS, Linux, and Windows
"""

import sys
import subprocess
import platform
from pathlib import Path


def print_banner():
    """Print SimplexForge banner."""
    banner = """
    ╔═══════════════════════════════════════════════════════════╗
    ║                                                           ║
    ║                      S I M P L E X                        ║
    ║                       F O R G E                           ║
    ║                                                           ║
    ║    Expansion, correction, cones and decoding on complexes ║
    ║                                                           ║
    ╚═══════════════════════════════════════════════════════════╝
    """
    print(banner, file=sys.stderr)


def check_python_version():
    """Check if Python version is 3.8 or higher."""
    if sys.version_info < (3, 8):
        print("❌ Error: Python 3.8 or higher is required", file=sys.stderr)
        print(f"   Current version: {sys.version}", file=sys.stderr)
        sys.exit(1)
    print(f"✓ Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
          file=sys.stderr)


def check_venv_module():
    """Check if venv module is available."""
    try:
        import venv  # noqa: F401
        print("✓ venv module available", file=sys.stderr)
        return True
    except ImportError:
        print("❌ venv module not found", file=sys.stderr)
        print("\n💡 Manual installation:", file=sys.stderr)
        if platform.system() == 'Linux':
            print("   sudo apt-get install python3-venv", file=sys.stderr)
        else:
            print("   Reinstall Python from https://www.python.org/downloads/", file=sys.stderr)
        return False


def check_venv():
    """Check if virtual environment exists, create if not."""
    venv_path = Path('src/venv')

    if venv_path.exists():
        print("✓ Virtual environment found", file=sys.stderr)
        return True

    if not check_venv_module():
        return False

    print("⚙ Creating virtual environment...", file=sys.stderr)
    try:
        subprocess.run(
            [sys.executable, '-m', 'venv', str(venv_path)],
            check=True
        )
        print("✓ Virtual environment created", file=sys.stderr)
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Failed to create virtual environment: {e}", file=sys.stderr)
        print("\n💡 Try running manually:", file=sys.stderr)
        print(f"   {sys.executable} -m venv src/venv", file=sys.stderr)
        return False


def get_venv_python():
    """Get the path to Python in the virtual environment."""
    venv_path = Path('src/venv')

    if platform.system() == 'Windows':
        return venv_path / 'Scripts' / 'python.exe'
    return venv_path / 'bin' / 'python'


def install_dependencies():
    """Install dependencies in virtual environment."""
    venv_python = get_venv_python()

    if not venv_python.exists():
        print("❌ Virtual environment Python not found, cannot install dependencies", file=sys.stderr)
        return False

    requirements_file = Path('requirements.txt')
    if not requirements_file.exists():
        requirements_file = Path('src/requirements.txt')

    if not requirements_file.exists():
        print("⚠ requirements.txt not found, skipping dependency installation", file=sys.stderr)
        return True

    print("\n📦 Checking dependencies...", file=sys.stderr)

    try:
        result = subprocess.run(
            [str(venv_python), '-m', 'pip', 'list'],
            capture_output=True,
            text=True,
            timeout=10
        )
        installed = result.stdout.lower()
        if all(name in installed for name in ('numpy', 'scipy', 'networkx', 'galois')):
            print("✓ Dependencies already installed", file=sys.stderr)
            return True
    except Exception:
        pass

    print("⚙ Installing dependencies (this may take a minute)...", file=sys.stderr)
    try:
        print("  Upgrading pip...", file=sys.stderr)
        subprocess.run(
            [str(venv_python), '-m', 'pip', 'install', '--upgrade', 'pip'],
            capture_output=True,
            check=True
        )
        print("  Installing packages...", file=sys.stderr)
        subprocess.run(
            [str(venv_python), '-m', 'pip', 'install', '-r', str(requirements_file)],
            check=True
        )
        print("✓ Dependencies installed successfully", file=sys.stderr)
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Failed to install dependencies: {e}", file=sys.stderr)
        print("\n💡 Try installing manually:", file=sys.stderr)
        print(f"   {venv_python} -m pip install -r {requirements_file}", file=sys.stderr)
        return False


def run_forge(args):
    """Run the forge CLI in the virtual environment; returns its exit code."""
    from version import __version__, __description__
    from config import show_config, set_config_value

    if '--version' in args:
        print(f"\nSimplexForge v{__version__}")
        print(f"{__description__}\n")
        return 0

    if '--show-config' in args:
        show_config()
        return 0

    if '--set-config' in args:
        idx = args.index('--set-config')
        if idx + 2 < len(args):
            return 0 if set_config_value(args[idx + 1], args[idx + 2]) else 1
        print("Error: --set-config requires KEY and VALUE")
        return 2

    venv_python = get_venv_python()

    if not venv_python.exists():
        print("❌ Virtual environment Python not found", file=sys.stderr)
        return 1

    forge_path = Path(__file__).parent / 'forge.py'
    cmd = [str(venv_python), str(forge_path)] + args

    try:
        return subprocess.run(cmd).returncode
    except KeyboardInterrupt:
        print("\n\n⚠ Operation cancelled by user", file=sys.stderr)
        return 0


def show_usage():
    """Show usage information."""
    cmd = 'python src\\main.py' if platform.system() == 'Windows' else './simplexforge.sh'

    print("\n📖 Usage:", file=sys.stderr)
    print(f"  {cmd} gen building 3 2", file=sys.stderr)
    print(f"  {cmd} expansion complex.json --k 0 --group Z2", file=sys.stderr)
    print(f"  {cmd} cone --building 4 2 --colors 1 2 --k 0", file=sys.stderr)
    print(f"  {cmd} bounds local-to-global --beta 1 --lambda 0 --k 1", file=sys.stderr)
    print("\n📚 For more options:", file=sys.stderr)
    print(f"  {cmd} --help", file=sys.stderr)
    print(file=sys.stderr)


def main():
    """Main entry point."""
    args = sys.argv[1:]
    quiet = '--quiet' in args or '-q' in args

    if not quiet:
        print_banner()
        print("\n🔍 Checking system requirements...", file=sys.stderr)
    check_python_version()

    if not check_venv():
        print("\n❌ Cannot proceed without virtual environment", file=sys.stderr)
        sys.exit(1)

    if not install_dependencies():
        print("\n⚠ Warning: Dependencies may not be fully installed", file=sys.stderr)
        print("   The CLI will report what is missing when it starts", file=sys.stderr)

    if not args or '--help' in args or '-h' in args:
        show_usage()
        if args:
            sys.exit(run_forge(['--help']))
        print("💡 Tip: Run with --help to see all available options", file=sys.stderr)
        sys.exit(0)

    code = run_forge(args)

    if not quiet and code == 0:
        print(f"\n{'='*60}", file=sys.stderr)
        print("✨ Done! Thank you for using SimplexForge", file=sys.stderr)
        print(f"{'='*60}\n", file=sys.stderr)
    sys.exit(code)


if __name__ == '__main__':
    try:
        main()
    except KeyboardInterrupt:
        print("\n\n⚠ Operation cancelled by user", file=sys.stderr)
        sys.exit(0)
    except Exception as e:
        print(f"\n❌ Unexpected error: {e}", file=sys.stderr)
        sys.exit(1)
