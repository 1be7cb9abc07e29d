"""Exact Steklov spectrum of spherical cylinders and its two-term Weyl law."""

from .geometry import CylinderGeometry, EigenvalueRecord, SpectralFamily

__version__ = "0.1.0"

__all__ = ["CylinderGeometry", "EigenvalueRecord", "SpectralFamily", "__version__"]
