"""Combinatorics of R-R diagrams on the boundary of a genus-two handlebody."""

__version__ = "0.1.0"
