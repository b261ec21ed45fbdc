"""Automorphism groups of cubic graphs and the extremal candidate graphs."""

__version__ = "0.1.0"
