"""Affine Weyl groups, Pieri factors, nilCoxeter algebras and affine Stanley
symmetric functions for the classical affine types."""

__version__ = "0.1.0"
