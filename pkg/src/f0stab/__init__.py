"""Exact wall-and-chamber computations for invariant stability data on the local quadric quiver."""

from . import chambers, charge, geometry, hearts, klattice, kronecker, linalg, render

__all__ = ["chambers", "charge", "geometry", "hearts", "klattice", "kronecker", "linalg", "render"]
