"""Exact set-valued Lagrange multipliers, duality and sensitivity for polyhedral programs."""

__version__ = "0.1.0"
