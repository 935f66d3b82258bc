"""Dimensions of Hadamard products of projective varieties over prime fields."""

__version__ = "0.1.0"
