"""Almost cohomology of Lie rings over finitely generated abelian groups."""

__version__ = "0.1.0"
