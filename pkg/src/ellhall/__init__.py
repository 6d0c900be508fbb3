"""ellhall: exact computer algebra for the generic positive elliptic Hall
algebra in its convex-path PBW presentation — bar involution, canonical
basis, and elliptic Kostka polynomial tables."""

__version__ = "0.1.0"
