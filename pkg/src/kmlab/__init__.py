"""Exact integer engine for Kac-Moody root-system combinatorics.

Validates generalized Cartan matrices, generates real roots with their
coroots, enumerates Weyl group elements and inversion sets, decides
prenilpotency of root pairs and sets, and computes the nilpotency
degree of an inversion set with a verified witness sequence.
"""

__version__ = "0.1.0"
