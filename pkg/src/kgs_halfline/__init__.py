"""Spectral simulator for the Klein-Gordon-Schrodinger system on the half-line."""

__version__ = "0.1.0"
