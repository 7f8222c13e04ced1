"""Utility functions shared across kgqa."""

from .text import Token, tokenize, normalize, tokenize_words
from .format_list import format_list

__all__ = [
    "Token",
    "tokenize",
    "normalize",
    "tokenize_words",
    "format_list",
]
