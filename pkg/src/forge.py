#!/usr/bin/env python3
"""
SimplexForge - simplicial expansion toolkit CLI
Forge complexes, cochains, cones and certificates from the command line
"""

import sys
from cli import run_forge


def main():
    """Main entry point with error handling."""
    try:
        sys.exit(run_forge())
    except KeyboardInterrupt:
        print("\n\nOperation cancelled by user.", file=sys.stderr)
        sys.exit(0)
    except Exception as e:
        print(f"\nUnexpected error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == '__main__':
    main()
