"""Exact modular representation theory of symmetric groups over prime fields."""

__version__ = "0.1.0"
