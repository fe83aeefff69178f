"""Averaging sequences, cocycle-weighted Følner sets and harmonic measures on orbit graphs."""

__version__ = "0.1.0"
