"""Finite model finder for first-order statements."""

from ._core import InputError, filter_identities, flatten, search, solve_cnf

__all__ = ["InputError", "filter_identities", "flatten", "search", "solve_cnf"]
