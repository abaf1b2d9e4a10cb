"""Exact slice-filtration calculations for cyclic groups."""

__version__ = "0.1.0"
