"""Exact graded linear algebra over Cox rings of simplicial toric varieties."""

__version__ = "0.1.0"
