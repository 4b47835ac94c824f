"""
Elliptic Hecke eigenforms of level one and their eigenvalue tables.

Cusp eigenforms are produced only for the weights whose cusp space is one
dimensional, where Delta * E_{w-12} is the normalised eigenform.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

import sympy
from loguru import logger
from pydantic import BaseModel, ConfigDict

from models.errors import InputValidationError, UnsupportedCaseError

from .arithmetic import bernoulli, sigma
from .series import PowerSeries, delta_expansion

ONE_DIMENSIONAL_CUSP_WEIGHTS: Tuple[int, ...] = (12, 16, 18, 20, 22, 26)


class EigenvalueTable(BaseModel):
    """a(1) .. a(bound) of a normalised Hecke eigenform of the given weight"""
    model_config = ConfigDict(frozen=True)

    weight: int
    values: Tuple[int, ...]

    @property
    def bound(self) -> int:
        return len(self.values)

    def a(self, n: int) -> int:
        if not 1 <= n <= self.bound:
            raise InputValidationError(
                f"Eigenvalue a({n}) is outside the table (weight {self.weight}, bound {self.bound})"
            )
        return self.values[n - 1]

    def __getitem__(self, n: int) -> int:
        return self.a(n)


def eisenstein_series(weight: int, precision: int) -> PowerSeries:
    """Normalised E_w = 1 - (2w / B_w) sum sigma_{w-1}(n) q^n (E_0 = 1)"""
    if weight == 0:
        return PowerSeries.one(precision)
    if weight < 4 or weight % 2:
        raise InputValidationError(f"Level one Eisenstein series need even weight >= 4, got {weight}")
    factor = -2 * weight / bernoulli(weight)
    return PowerSeries.from_coefficients(
        [1] + [factor * sigma(weight - 1, n) for n in range(1, precision)], precision
    )


def cusp_eigenform(weight: int, precision: int) -> PowerSeries:
    """Delta * E_{w-12}; only for weights with a one dimensional cusp space"""
    if weight not in ONE_DIMENSIONAL_CUSP_WEIGHTS:
        raise UnsupportedCaseError(
            f"No unique cusp eigenform in weight {weight}; supported weights: {ONE_DIMENSIONAL_CUSP_WEIGHTS}"
        )
    form = delta_expansion(precision) * eisenstein_series(weight - 12, precision)
    if any(not isinstance(c, int) for c in form.coeffs):
        raise ArithmeticError(f"Weight {weight} eigenform has non-integral coefficients")
    return form


def extend_multiplicatively(weight: int, prime_powers: Dict[int, int], bound: int) -> Tuple[int, ...]:
    """
    a(1..bound) from a(p) alone: the Hecke recursion
    a(p^{m+1}) = a(p) a(p^m) - p^{w-1} a(p^{m-1}) and multiplicativity.
    """
    values = [0] * (bound + 1)
    values[1] = 1
    for p in sympy.primerange(2, bound + 1):
        previous, current = 1, prime_powers[int(p)]
        power_of_p = int(p)
        while power_of_p <= bound:
            values[power_of_p] = current
            previous, current = current, prime_powers[int(p)] * current - int(p) ** (weight - 1) * previous
            power_of_p *= int(p)
    for n in range(2, bound + 1):
        if values[n]:
            continue
        factors = sympy.factorint(n)
        if len(factors) == 1:
            continue
        result = 1
        for p, e in factors.items():
            result *= values[int(p) ** e]
        values[n] = result
    return tuple(values[1:])


@lru_cache(maxsize=None)
def eigenvalue_table(weight: int, bound: int) -> EigenvalueTable:
    """
    Eigenvalues of the weight w cusp eigenform up to bound, read from the
    q-expansion and checked against the Hecke recursion.
    """
    if bound < 1:
        raise InputValidationError(f"Eigenvalue table bound must be >= 1, got {bound}")
    form = cusp_eigenform(weight, bound + 1)
    direct = tuple(int(form[n]) for n in range(1, bound + 1))

    at_primes = {int(p): direct[p - 1] for p in sympy.primerange(2, bound + 1)}
    recursed = extend_multiplicatively(weight, at_primes, bound)
    if recursed != direct:
        first = next(n for n in range(bound) if recursed[n] != direct[n]) + 1
        logger.error(f"Hecke recursion disagrees with the q-expansion at n={first} (weight {weight})")
        raise ArithmeticError(f"Weight {weight}: Hecke recursion and q-expansion disagree at n={first}")

    logger.debug(f"Eigenvalue table weight={weight} bound={bound} verified")
    return EigenvalueTable(weight=weight, values=direct)


def tau_table(bound: int) -> EigenvalueTable:
    """Ramanujan tau(1..bound)"""
    return eigenvalue_table(12, bound)


__all__ = [
    "ONE_DIMENSIONAL_CUSP_WEIGHTS",
    "EigenvalueTable",
    "eisenstein_series",
    "cusp_eigenform",
    "extend_multiplicatively",
    "eigenvalue_table",
    "tau_table",
]
