"""Exact computations with the quadratic Koszul complex of the stable torus-knot homology."""
__version__ = "0.1.0"
