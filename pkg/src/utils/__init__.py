"""Utility modules for SimplexForge."""
