"""Bateman functions F_n(t): exact construction, zeros and extrema, and the Krzyz bound scan."""

__version__ = "0.1.0"
