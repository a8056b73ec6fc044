"""Command line interface."""

from dnls_lab.cli.main import cli, main

__all__ = ["cli", "main"]
