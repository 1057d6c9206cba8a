"""Symbolic versus ordinary powers of ideals of points in the projective plane."""

__version__ = "0.1.0"
