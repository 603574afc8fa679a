"""Cube tiling workbench for the Lagarias-Shor code and Lucas-cube identities."""

__version__ = "0.1.0"
