"""Exact-arithmetic Hopf algebroids, measurings, and cyclic (co)homology."""

__version__ = "0.1.0"
