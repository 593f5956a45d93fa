"""Exact evaluation of tetrahedral L-operator lattice models."""

__version__ = "0.1.0"
