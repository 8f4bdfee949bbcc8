"""Endpoint flows, phase transitions and thermodynamics of Hermitian matrix models."""

__version__ = "0.1.0"
