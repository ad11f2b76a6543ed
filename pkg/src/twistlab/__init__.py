"""Exact Drinfeld twists for finite group algebras."""

__version__ = "0.1.0"
