"""Paradox demonstrations."""
