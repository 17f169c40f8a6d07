"""coxtype - Exact combinatorics of affine Weyl groups and Coxeter-type classification."""

__version__ = "0.1.0"
__author__ = "Amit"
