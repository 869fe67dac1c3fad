"""Approximate mutually unbiased bases: constructions, measures and applications."""

__version__ = "0.1.0"
