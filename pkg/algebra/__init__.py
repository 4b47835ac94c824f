from .octonion import Octonion, verify_multiplication_table
from .jordan import HalfIntegralSym3, JordanElement, LocalData, local_data, pivot_reduce

__all__ = [
    "Octonion",
    "verify_multiplication_table",
    "HalfIntegralSym3",
    "JordanElement",
    "LocalData",
    "local_data",
    "pivot_reduce",
]
