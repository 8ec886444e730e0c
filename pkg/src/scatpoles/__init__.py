"""Scattering-pole distributions for the sphere and the transparent ball."""

__version__ = "0.1.0"
