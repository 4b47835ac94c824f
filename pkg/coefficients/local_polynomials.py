"""
Local polynomials attached to rank 3 indices.

A rank 3 index is described by its elementary divisors diag(t1, t2, t3); at a
prime p the sorted valuations (tau1, tau2, tau3) select the polynomial. Only the
profiles with tau1 = 0 and the profile (1, 1, 1) have closed forms here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field

from algebra.jordan import LocalData
from models.errors import InputValidationError, UnsupportedCaseError

Profile = Tuple[int, int, int]


class DiagonalProfile(BaseModel):
    """Elementary divisors of a rank 3 index and the per-prime valuation profiles"""
    model_config = ConfigDict(frozen=True)

    diagonal: Tuple[int, int, int]
    det: int
    rank: int = 3
    tau: Dict[int, Profile] = Field(default_factory=dict)

    @classmethod
    def from_diagonal(cls, t1: int, t2: int, t3: int) -> "DiagonalProfile":
        entries = (t1, t2, t3)
        if min(entries) < 1:
            raise InputValidationError(f"A rank 3 profile needs positive diagonal entries, got {entries}")
        det = t1 * t2 * t3
        tau = {
            int(p): tuple(sorted(int(sympy.multiplicity(p, t)) for t in entries))
            for p in sympy.factorint(det)
        }
        return cls(diagonal=entries, det=det, tau=tau)

    @classmethod
    def from_local_data(cls, data: LocalData) -> "DiagonalProfile":
        """Read diag(d1, d2/d1, d3/d2) off d(T)"""
        d1, d2, d3 = data.triple()
        if d3 <= 0:
            raise InputValidationError(f"Rank 3 profile needs det > 0, got d(T) = {data.triple()}")
        if d2 % d1 or d3 % d2:
            raise UnsupportedCaseError(f"d(T) = {data.triple()} is not a chain of divisors")
        return cls.from_diagonal(d1, d2 // d1, d3 // d2)

    def local_degree(self, p: int) -> int:
        return sum(self.tau.get(p, (0, 0, 0)))


def is_supported(tau: Profile) -> bool:
    return tau[0] == 0 or tuple(tau) == (1, 1, 1)


def _require_supported(tau: Profile) -> None:
    if not is_supported(tau):
        raise UnsupportedCaseError(
            f"Local polynomial for profile {tuple(tau)} is not available; "
            "only tau1 = 0 and (1, 1, 1) are implemented"
        )


def katsurada_poly(tau: Profile, p: int) -> Tuple[int, ...]:
    """
    Coefficients (constant term first) of the local polynomial f at p.

    tau1 = 0:     sum_{l <= tau2} (p^4 X)^l (1 + X + ... + X^{tau3 + tau2 - 2l})
    (1, 1, 1):    X^3 + c X^2 + c X + 1 with c = p^8 + p^4 + 1
    """
    tau = tuple(sorted(tau))
    _require_supported(tau)
    degree = sum(tau)
    coeffs = [0] * (degree + 1)
    if tau[0] == 0:
        _, t2, t3 = tau
        for l in range(t2 + 1):
            scale = p ** (4 * l)
            for i in range(t3 + t2 - 2 * l + 1):
                coeffs[l + i] += scale
    else:
        c = p ** 8 + p ** 4 + 1
        coeffs = [1, c, c, 1]
    return tuple(coeffs)


class LaurentSymmetric(BaseModel):
    """Laurent polynomial in X stored as exponent -> integer coefficient"""
    model_config = ConfigDict(frozen=True)

    terms: Dict[int, int]

    def coefficient(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def is_symmetric(self) -> bool:
        return all(self.coefficient(-e) == c for e, c in self.terms.items())

    def inverted(self) -> "LaurentSymmetric":
        """Substitute X -> 1/X"""
        return LaurentSymmetric(terms={-e: c for e, c in self.terms.items()})

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** e for e, c in self.terms.items()), Fraction(0))

    def chebyshev_coefficients(self) -> Dict[int, int]:
        """
        Write the polynomial as sum b_j U_j with U_j = X^j + X^{j-2} + ... + X^{-j},
        peeling from the top degree.
        """
        if not self.is_symmetric():
            raise ArithmeticError(f"Laurent polynomial {self.terms} is not symmetric")
        remaining = {e: c for e, c in self.terms.items() if c}
        out: Dict[int, int] = {}
        while remaining:
            top = max(remaining)
            if top < 0:
                raise ArithmeticError("Negative leading exponent in a symmetric Laurent polynomial")
            b = remaining[top]
            out[top] = b
            for e in range(-top, top + 1, 2):
                remaining[e] = remaining.get(e, 0) - b
                if not remaining[e]:
                    del remaining[e]
        return out


def tilde(poly: Tuple[int, ...]) -> LaurentSymmetric:
    """X^d f(X^{-2}) for f of degree d"""
    degree = len(poly) - 1
    terms: Dict[int, int] = {}
    for i, c in enumerate(poly):
        if c:
            terms[degree - 2 * i] = terms.get(degree - 2 * i, 0) + c
    return LaurentSymmetric(terms=terms)


def supported_profiles(max_tau2: int = 2, max_tau3: int = 4) -> List[Profile]:
    """Every supported profile up to the given bounds"""
    profiles = [(0, t2, t3) for t2 in range(max_tau2 + 1) for t3 in range(t2, max_tau3 + 1)]
    return profiles + [(1, 1, 1)]


__all__ = [
    "DiagonalProfile",
    "LaurentSymmetric",
    "is_supported",
    "katsurada_poly",
    "tilde",
    "supported_profiles",
]
