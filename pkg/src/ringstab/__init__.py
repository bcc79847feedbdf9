"""Stabilizability of plants over commutative rings: criteria and controller synthesis."""

__version__ = "0.1.0"
