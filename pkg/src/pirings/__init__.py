"""Exact and Monte Carlo calculus for zonoids and probabilistic intersection rings."""

__version__ = "0.1.0"
