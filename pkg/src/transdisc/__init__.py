"""Transversal discriminants of singularities along smooth strata.

Exact computations over Q: conormal data of a pair (X, Z), the critical
locus of the fiberwise discriminant, its multiplicities and presentation
determinants, the weighted-homogeneous closed forms, and a job-file CLI.
"""
__version__ = "0.1.0"
