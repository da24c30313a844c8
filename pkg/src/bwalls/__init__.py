"""Exact Bridgeland wall geometry and Reider-type positivity criteria for surfaces."""

__version__ = "0.1.0"
