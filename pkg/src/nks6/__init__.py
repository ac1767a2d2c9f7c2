"""Numerical geometry of the nearly Kähler 6-sphere and its Lagrangian submanifolds."""

__version__ = "0.1.0"
