"""Persistent string collection with searchable edit history."""

from ._core import Session

__all__ = ["Session"]
