"""Exact multisymmetric-polynomial toolkit and the cuboid factor equations."""

__version__ = "0.1.0"
