"""
rsxf - Reed-Solomon codes over GF(2^m) on the additive FFT

Polynomial-basis transforms, Newton division and half-GCD in the subspace basis,
systematic (2^m, k) encoding and syndrome decoding.
"""

__version__ = "1.0.0"
