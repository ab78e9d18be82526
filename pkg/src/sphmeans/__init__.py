"""Generalized spherical-mean transform on radial profiles."""

__version__ = "0.1.0"
