"""Exact symbolic engine for bicovariant differential calculi over
compact matrix quantum groups and their universal characteristic classes."""

__all__ = ["scalar", "linalg", "hopf", "calculus", "exterior", "universal",
           "classes", "presets", "cli"]
