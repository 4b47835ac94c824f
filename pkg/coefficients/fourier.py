"""
Fourier coefficients of the Ikeda type lift and of the Eisenstein series on
the exceptional domain.

Everything is evaluated through Hecke eigenvalues and integer powers of p;
Satake parameters never appear numerically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from loguru import logger
from pydantic import BaseModel, ConfigDict

from algebra.jordan import (
    HalfIntegralSym3,
    JordanElement,
    cross,
    element_content,
    is_integral_element,
    is_psd,
    jordan_rank,
    local_data,
)
from models.errors import InputValidationError
from qseries.arithmetic import divisors, eisenstein_constants, sigma
from qseries.eigenforms import EigenvalueTable

from .local_polynomials import DiagonalProfile, katsurada_poly, tilde

Index = Union[JordanElement, HalfIntegralSym3, DiagonalProfile]


def _as_jordan(target: Union[JordanElement, HalfIntegralSym3]) -> JordanElement:
    if isinstance(target, HalfIntegralSym3):
        return target.to_jordan()
    return target


def rank_of(target: Union[JordanElement, HalfIntegralSym3]) -> int:
    return jordan_rank(_as_jordan(target))


def profile_of(target: Index) -> DiagonalProfile:
    """Rank 3 profile; a diagonal HalfIntegralSym3 is read directly, anything else through d(T)"""
    if isinstance(target, DiagonalProfile):
        return target
    if isinstance(target, HalfIntegralSym3) and not any(target.off_diagonal()):
        return DiagonalProfile.from_diagonal(*target.diagonal_entries())
    element = _as_jordan(target)
    return DiagonalProfile.from_local_data(local_data(element))


# ============== Ikeda type lift ==============

def ikeda_local_factor(tau, p: int, weight: int, eigen: EigenvalueTable) -> int:
    """
    p^{(2k-9) d / 2} times the local polynomial at the Satake parameter,
    as sum_j b_j p^{(2k-9)(d-j)/2} a(p^j).
    """
    degree = sum(tau)
    s = weight - 9
    total = 0
    for j, b in tilde(katsurada_poly(tau, p)).chebyshev_coefficients().items():
        total += b * p ** (s * (degree - j) // 2) * eigen.a(p ** j)
    return total


def ikeda_formula_sum(tau, p: int, weight: int, eigen: EigenvalueTable) -> int:
    """sum_{i <= tau2} p^{i(2k-5)} a(p^{d - 2i}); valid for tau1 = 0"""
    if tau[0] != 0:
        raise InputValidationError(f"The divisor-sum form needs tau1 = 0, got {tuple(tau)}")
    degree = sum(tau)
    return sum(p ** (i * (weight - 5)) * eigen.a(p ** (degree - 2 * i)) for i in range(tau[1] + 1))


def check_lift_weight(weight: int, eigen: EigenvalueTable) -> None:
    if weight < 20 or weight % 2:
        raise InputValidationError(f"Ikeda type lifts need an even weight >= 20, got {weight}")
    if eigen.weight != weight - 8:
        raise InputValidationError(
            f"A weight {weight} lift needs an eigenform of weight {weight - 8}, got {eigen.weight}"
        )


def ikeda_coeff(target: Index, weight: int, eigen: EigenvalueTable) -> int:
    """A_F(T) for the lift of eigen to weight 2k; T must be positive definite"""
    check_lift_weight(weight, eigen)
    if not isinstance(target, DiagonalProfile):
        element = _as_jordan(target)
        if not is_integral_element(element):
            raise InputValidationError("ikeda_coeff needs an integral index")
        if jordan_rank(element) != 3 or not is_psd(element):
            raise InputValidationError("ikeda_coeff needs a positive definite index")
    profile = profile_of(target)

    value = 1
    for p, tau in sorted(profile.tau.items()):
        value *= ikeda_local_factor(tau, p, weight, eigen)
    return value


# ============== Eisenstein series ==============

class EisensteinCoefficient(BaseModel):
    """Un-normalised coefficient A and the constant C with A~ = C A"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rank: int
    value: int
    constant: Fraction

    @property
    def normalised(self) -> Fraction:
        return self.constant * self.value


def eisenstein_local_factor(tau, p: int, weight: int) -> int:
    """p^{(2k-9) d / 2} f~(p^{(2k-9)/2}) = sum_i c_i p^{(2k-9)(d-i)}"""
    poly = katsurada_poly(tau, p)
    degree = len(poly) - 1
    s = weight - 9
    return sum(c * p ** (s * (degree - i)) for i, c in enumerate(poly))


def eisenstein_coeff(target: Index, weight: int) -> EisensteinCoefficient:
    constants = eisenstein_constants(weight)

    if isinstance(target, DiagonalProfile):
        if target.rank != 3:
            raise InputValidationError("Diagonal profiles describe rank 3 indices only")
        rank = 3
    else:
        element = _as_jordan(target)
        if not is_integral_element(element) or not is_psd(element):
            raise InputValidationError("eisenstein_coeff needs an integral positive semidefinite index")
        rank = jordan_rank(element)

    if rank == 0:
        return EisensteinCoefficient(rank=0, value=1, constant=Fraction(1))

    if rank == 1:
        return EisensteinCoefficient(
            rank=1, value=sigma(weight - 1, element_content(element)), constant=constants.rank1
        )

    if rank == 2:
        epsilon = element_content(element)
        delta = element_content(cross(element))
        value = 0
        for d in divisors(epsilon):
            if delta % (d * d):
                logger.error(f"Rank 2 index: content {epsilon} squared does not divide {delta}")
                raise ArithmeticError(f"Delta(T x T) = {delta} is not divisible by {d}^2")
            value += d ** (weight - 1) * sigma(weight - 5, delta // (d * d))
        return EisensteinCoefficient(rank=2, value=value, constant=constants.rank2)

    profile = profile_of(target)
    value = 1
    for p, tau in sorted(profile.tau.items()):
        value *= eisenstein_local_factor(tau, p, weight)
    return EisensteinCoefficient(rank=3, value=value, constant=constants.rank3)


__all__ = [
    "EisensteinCoefficient",
    "rank_of",
    "profile_of",
    "ikeda_local_factor",
    "ikeda_formula_sum",
    "ikeda_coeff",
    "check_lift_weight",
    "eisenstein_local_factor",
    "eisenstein_coeff",
]
