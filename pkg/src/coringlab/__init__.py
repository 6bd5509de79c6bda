"""Exact computations with corings, comodules, contramodules and Hopf algebras."""

__version__ = "0.1.0"
