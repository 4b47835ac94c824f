"""
Closed forms for restricted coefficients on the named indices.

Each closed form is a finite sum of (lattice count) x (coefficient of a class
representative); the counts come from lattice.counts and the coefficients from
coefficients.fourier.
"""

from fractions import Fraction
from typing import Optional

from loguru import logger

from coefficients.fourier import check_lift_weight, ikeda_coeff
from coefficients.local_polynomials import DiagonalProfile
from lattice.counts import (
    count_half_shifted,
    count_pairs_by_norm_sum,
    count_pairs_shifted_shifted,
    count_pairs_shifted_integral,
    count_unit_products,
    table_diag222,
)
from lattice.shells import shell_count
from models.errors import UnsupportedCaseError
from qseries.arithmetic import eisenstein_constants, sigma
from qseries.eigenforms import EigenvalueTable

from .named import NamedIndex, has_vanishing_shape


# ============== Ikeda type lift ==============

def ikeda_d_family(a: int, eigen: EigenvalueTable) -> int:
    """sum_{n=1}^{a} a(n) #{(y, z) : N(y) + N(z) = a - n, N(y), N(z) < a}"""
    return sum(eigen.a(n) * count_pairs_by_norm_sum(a, a - n) for n in range(1, a + 1))


def ikeda_g(eigen: EigenvalueTable) -> int:
    """
    Three classes over G, all with x a half unit: y = z = 0 (det 2), y = 0 with
    N(z) = 1 (det 1), and N(y) = 1 with z = x'y imaginary (det 1).
    """
    half_units = count_half_shifted()
    return (
        half_units * eigen.a(2)
        + half_units * shell_count(1, imaginary=True) * eigen.a(1)
        + count_pairs_shifted_integral() * eigen.a(1)
    )


def ikeda_h(weight: int, eigen: EigenvalueTable, jobs: Optional[int] = None) -> int:
    total = 0
    for (d1, d2, d3), count in table_diag222(jobs).items():
        if not count:
            continue
        profile = DiagonalProfile.from_diagonal(d1, d2 // d1, d3 // d2)
        total += count * ikeda_coeff(profile, weight, eigen)
    return total


def ikeda_closed_form(index: NamedIndex, weight: int, eigen: EigenvalueTable, jobs: Optional[int] = None) -> int:
    check_lift_weight(weight, eigen)
    S = index.matrix
    if not S.is_pd():
        # T pd forces T1 pd, so a cusp form has nothing to sum
        return 0
    if has_vanishing_shape(S):
        return 0
    if index.family == "D":
        return ikeda_d_family(index.parameter, eigen)
    if index.label == "G":
        return ikeda_g(eigen)
    if index.label == "H":
        return ikeda_h(weight, eigen, jobs)
    raise UnsupportedCaseError(f"No closed form for the Ikeda restriction at {index.label}")


# ============== Eisenstein series ==============

def eisenstein_d_family(a: int, weight: int) -> Fraction:
    constants = eisenstein_constants(weight)
    rank3 = sum(
        sigma(weight - 9, n) * count_pairs_by_norm_sum(a, a - n) for n in range(1, a + 1)
    )
    # x = 0 and det 0
    flat = sum(
        shell_count(n, imaginary=True) * shell_count(a - n, imaginary=True) for n in range(a + 1)
    )
    # N(x) = 1 forces z = x'y; the block left after pivoting is diag(a - N(y), 0)
    unit_rank2 = sum(sigma(weight - 5, n) * count_unit_products(a - n) for n in range(1, a + 1))
    unit_rank1 = count_unit_products(a)
    return (
        constants.rank3 * rank3
        + constants.rank2 * (flat + unit_rank2)
        + constants.rank1 * unit_rank1
    )


def eisenstein_closed_form(index: NamedIndex, weight: int) -> Fraction:
    constants = eisenstein_constants(weight)
    units = shell_count(1, imaginary=True)
    if index.family == "D":
        return eisenstein_d_family(index.parameter, weight)
    fixed = {
        "O": lambda: Fraction(1),
        "u2": lambda: constants.rank1,
        "u4": lambda: constants.rank2 + units * constants.rank1,
        "u6": lambda: count_half_shifted() * constants.rank1,
        "W": lambda: count_half_shifted() * constants.rank2 + count_pairs_shifted_integral() * constants.rank1,
        "S1": lambda: count_pairs_shifted_shifted() * constants.rank1,
    }
    if index.label not in fixed:
        raise UnsupportedCaseError(
            f"No closed form for the Eisenstein restriction at {index.label}; use the enumeration route"
        )
    value = fixed[index.label]()
    logger.debug(f"Eisenstein closed form at {index.label}, weight {weight}: {value}")
    return Fraction(value)


__all__ = [
    "ikeda_d_family",
    "ikeda_g",
    "ikeda_h",
    "ikeda_closed_form",
    "eisenstein_d_family",
    "eisenstein_closed_form",
]
