"""
Algebra Modülü
==============

Hareketli kuadratik fiber cebiri A_z: i² + β·i + α = 0.
"""

from app.algebra.fiber import (
    AlgebraElement,
    FiberCoefficients,
    conj,
    from_complex,
    inv_two_i_plus_beta,
    inverse,
    j_element,
    mul,
    norm,
    to_complex,
)

__all__ = [
    "AlgebraElement",
    "FiberCoefficients",
    "conj",
    "from_complex",
    "inv_two_i_plus_beta",
    "inverse",
    "j_element",
    "mul",
    "norm",
    "to_complex",
]
