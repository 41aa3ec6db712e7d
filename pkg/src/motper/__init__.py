"""Exact engine for motivic periods of mixed Tate type."""
__version__ = "0.1.0"
