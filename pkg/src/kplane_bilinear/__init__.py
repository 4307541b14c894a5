"""Numerical verification of bilinear k-plane identities for extension operators."""

__version__ = "0.1.0"
