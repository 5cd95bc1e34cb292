"""Exact truncated computations with Drinfeld-Kohno Lie algebras,
associators and Grothendieck-Teichmueller groups."""

__version__ = "0.1.0"
