"""
Exact arithmetic helpers: Bernoulli numbers, divisor sums and the Eisenstein
normalising constants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List

import sympy
from pydantic import BaseModel, ConfigDict

from models.errors import InputValidationError


def bernoulli(n: int) -> Fraction:
    """
    Bernoulli number B_n in the standard convention: B_1 = -1/2, B_2 = 1/6,
    B_4 = -1/30, B_odd = 0 for odd n >= 3.
    """
    if n < 0:
        raise InputValidationError(f"bernoulli needs n >= 0, got {n}")
    # sympy >= 1.12 returns +1/2 for B_1
    if n == 1:
        return Fraction(-1, 2)
    value = sympy.bernoulli(n)
    return Fraction(int(value.p), int(value.q))


def sigma(k: int, n: int) -> int:
    """sigma_k(n) = sum of d^k over the divisors d of n"""
    if n < 1:
        raise InputValidationError(f"sigma needs n >= 1, got {n}")
    if k < 0:
        raise InputValidationError(f"sigma needs k >= 0, got {k}")
    return int(sympy.divisor_sigma(n, k))


def divisors(n: int) -> List[int]:
    return [int(d) for d in sympy.divisors(n)]


class EisensteinConstants(BaseModel):
    """Normalising constants for the rank 3, rank 2 and rank 1 Fourier coefficients"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weight: int
    rank3: Fraction
    rank2: Fraction
    rank1: Fraction


@lru_cache(maxsize=None)
def eisenstein_constants(weight: int) -> EisensteinConstants:
    """
    Constants for the Eisenstein series of weight w = 2k:

        rank 3:  -8 w (w-4) (w-8) / (B_w B_{w-4} B_{w-8})
        rank 2:   4 w (w-4) / (B_w B_{w-4})
        rank 1:  -4k / B_w
    """
    if weight < 10 or weight % 2:
        raise InputValidationError(f"Eisenstein constants need an even weight >= 10, got {weight}")
    b0, b4, b8 = bernoulli(weight), bernoulli(weight - 4), bernoulli(weight - 8)
    return EisensteinConstants(
        weight=weight,
        rank3=Fraction(-8 * weight * (weight - 4) * (weight - 8)) / (b0 * b4 * b8),
        rank2=Fraction(4 * weight * (weight - 4)) / (b0 * b4),
        rank1=Fraction(-2 * weight) / b0,
    )


__all__ = ["bernoulli", "sigma", "divisors", "EisensteinConstants", "eisenstein_constants"]
