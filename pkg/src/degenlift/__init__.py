"""Exact liftability of lines in toric degenerations of projective hypersurfaces."""

__version__ = "0.1.0"
