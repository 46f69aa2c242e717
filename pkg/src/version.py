"""SimplexForge version information."""

__version__ = "1.0.0"
__author__ = "blackspider-ops"
__description__ = "Coboundary expansion, local correction, cones and decoding on simplicial complexes"
