"""Odd cycle transversals of planar cubic graphs via T-joins, curvature and moats."""

__version__ = "0.1.0"
