"""Python bindings for the jacclan library."""

from ._jacclan import JacclanError, Presentation, block, datum_degree, surface

__all__ = ["JacclanError", "Presentation", "block", "datum_degree", "surface"]
