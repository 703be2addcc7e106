"""Exact arithmetic for Jones/Alexander invariants of twist families of knots,
with machine verification of the cosmetic-surgery exclusion casework."""

__version__ = "0.1.0"
