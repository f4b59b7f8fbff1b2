"""Convex-position probabilities for convex bodies with a flat floor."""

__version__ = "0.1.0"
