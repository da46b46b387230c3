"""Exact solver and strategy toolkit for the Maker-Breaker domination game."""

__version__ = "0.1.0"
