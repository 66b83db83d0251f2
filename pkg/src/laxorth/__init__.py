"""Exhaustive verification of lax orthogonal factorisation systems on finite categories."""

__version__ = "0.1.0"
