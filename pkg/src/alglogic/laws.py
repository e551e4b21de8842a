"""Derived-law suite (built on the certifier)."""
