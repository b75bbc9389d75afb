"""Exact cohomology of Perm, dendriform and pre-Lie algebras and their tensor products."""

__version__ = "0.1.0"
