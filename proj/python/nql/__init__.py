"""Noisy quantum learning simulations (C++ core with Python bindings)."""

from _nql import *  # noqa: F401,F403
