"""Finite-instance verification toolkit for 2-dimensional sites and stacks.

Everything is an explicit finite table; every check returns a three-valued
verdict (pass / fail / inconclusive) with a finite witness.
"""

__version__ = "0.1.0"
