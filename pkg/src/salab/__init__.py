"""Exact symbolic verification of holomorphic string algebroid identities."""

__version__ = "0.1.0"
