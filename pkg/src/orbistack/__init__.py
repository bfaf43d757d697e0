"""Exact decisions for isomorphism of orbit stacks of discrete dynamical systems."""

__version__ = "0.1.0"
