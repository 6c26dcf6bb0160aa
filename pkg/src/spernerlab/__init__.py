"""Exact-arithmetic laboratory for Sperner- and Tucker-type labelling theorems."""

__version__ = "0.1.0"
