"""Infinitesimal CR automorphisms of weighted-homogeneous model hypersurfaces."""

__version__ = "0.1.0"
