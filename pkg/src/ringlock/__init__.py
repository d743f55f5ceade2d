"""Equational commutativity certificates for rings satisfying x^n = x."""

__version__ = "0.1.0"
