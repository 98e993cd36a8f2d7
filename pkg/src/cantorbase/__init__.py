"""Exact Cantor real base expansions over Pisot alphabets via finite transducers."""

__version__ = "0.1.0"
