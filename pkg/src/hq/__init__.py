"""Exact arithmetic for Cohen-Eisenstein series over real quadratic fields
and their diagonal restrictions."""

__version__ = "0.1.0"
