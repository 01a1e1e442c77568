"""Finite rings with involution: projections, covers, annihilator classes,
strict ideals, spectra, sheaves and unitification."""

__version__ = "0.1.0"
