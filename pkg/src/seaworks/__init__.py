"""Verification and search workbench for (sequential) effect algebras."""

__version__ = "0.1.0"
