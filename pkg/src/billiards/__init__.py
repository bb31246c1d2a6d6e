"""Exact polygonal billiards (inner and outer) on constant-curvature surfaces."""

__version__ = "0.1.0"
