"""Estimation, simulation and evaluation of a Goodwin growth-cycle model
with a constant capital accumulation rate."""

__version__ = "0.1.0"
