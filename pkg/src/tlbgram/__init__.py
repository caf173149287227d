"""Exact arithmetic for Gram matrices of annular chord diagrams.

The package builds the bilinear-form matrix of non-crossing annular
diagrams in two loop variables, verifies its Chebyshev-product
determinant factorization both symbolically and modularly, and
cross-checks ranks of its specializations against independent
skein-theoretic (Temperley-Lieb / Jones-Wenzl) evaluations.
"""

__version__ = "0.1.0"
