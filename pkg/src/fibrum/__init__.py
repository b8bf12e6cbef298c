"""Exact computations with fibered bisets over finite groups, fiber group Z/N."""

__version__ = "0.1.0"
