"""Exact combinatorics of quantum Bruhat graphs, tilted Bruhat orders,
tilted reduced words, tilted R-polynomials, and tilted Richardson varieties.

All arithmetic is exact: integers, ``fractions.Fraction``, or prime fields.
Permutations are tuples of the values 1..n in one-line notation.
"""

__version__ = "0.1.0"
