"""Command-line interface and JSON document formats."""

from .main import build_parser, main

__all__ = ["build_parser", "main"]
