"""Utilities."""

__all__: tuple[str, ...] = ()
