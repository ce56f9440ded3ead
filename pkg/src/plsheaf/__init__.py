"""Exact stalk-level verification of transforms of piecewise-linear constructible sheaves."""

__version__ = "0.1.0"
