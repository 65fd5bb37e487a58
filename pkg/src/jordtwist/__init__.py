"""Exact verification engine for the one-parameter family of Jordanian twists."""

__version__ = "0.1.0"
