"""Exact arithmetic substrate: quadratic numbers, integer matrices,
polynomials with Sturm root counting, and lattices in Hermite normal form."""

from orbistack.exactmath.quadratic import RATIONAL, QuadraticNumber, squarefree_split
from orbistack.exactmath.matrix import IntegerMatrix
from orbistack.exactmath.poly import (
    IntegerPolynomial,
    charpoly,
    count_real_roots_in,
    poly_gcd,
    squarefree_part,
    sturm_sequence,
)
from orbistack.exactmath.lattice import LatticeBasis, hnf, integer_kernel
from orbistack.exactmath.homography import qn_apply_homography

__all__ = [
    "RATIONAL",
    "QuadraticNumber",
    "squarefree_split",
    "IntegerMatrix",
    "IntegerPolynomial",
    "charpoly",
    "count_real_roots_in",
    "poly_gcd",
    "squarefree_part",
    "sturm_sequence",
    "LatticeBasis",
    "hnf",
    "integer_kernel",
    "qn_apply_homography",
]
