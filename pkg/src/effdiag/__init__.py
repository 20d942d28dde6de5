"""Diagrams for effectful signatures, finite promonads, and arrow notation."""

__version__ = "0.1.0"
