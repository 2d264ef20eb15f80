"""Exact truncated q-series: products, dissections, vanishing classes and Lambert sections."""

__version__ = "0.1.0"
