"""Stokes data of a rank-r irregular connection from exponential factors and Čech coverings."""

__version__ = "0.1.0"
