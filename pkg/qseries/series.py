"""
Truncated q-expansions with exact coefficients.

A PowerSeries holds the coefficients of q^0 .. q^(precision-1). Binary
operations truncate to the smaller precision; nothing extends precision
implicitly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import List, Sequence, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator

from models.errors import InputValidationError

from .arithmetic import sigma

Coefficient = Union[int, Fraction]


def _normalise(value) -> Coefficient:
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise ValueError(f"Series coefficients must be exact rationals, got {value!r}")
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


class PowerSeries(BaseModel):
    """sum coeffs[n] q^n for 0 <= n < precision"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    precision: int
    coeffs: Tuple[Coefficient, ...]

    @field_validator("coeffs", mode="before")
    @classmethod
    def exact_coefficients(cls, v):
        return tuple(_normalise(c) for c in v)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, precision: int) -> "PowerSeries":
        """Pad or cut coeffs to the precision"""
        if precision < 1:
            raise InputValidationError(f"Series precision must be >= 1, got {precision}")
        values = list(coeffs)[:precision]
        values += [0] * (precision - len(values))
        return cls(precision=precision, coeffs=values)

    @classmethod
    def one(cls, precision: int) -> "PowerSeries":
        return cls.from_coefficients([1], precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int) -> "PowerSeries":
        coeffs = [0] * precision
        if exponent < precision:
            coeffs[exponent] = 1
        return cls.from_coefficients(coeffs, precision)

    def __getitem__(self, n: int) -> Coefficient:
        if not 0 <= n < self.precision:
            raise IndexError(f"q^{n} is beyond precision {self.precision}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.precision

    def truncate(self, precision: int) -> "PowerSeries":
        if precision > self.precision:
            raise InputValidationError(
                f"Cannot extend a series of precision {self.precision} to {precision}"
            )
        return PowerSeries.from_coefficients(self.coeffs[:precision], precision)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.precision, other.precision)
        return PowerSeries.from_coefficients([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.precision, other.precision)
        return PowerSeries.from_coefficients([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries.from_coefficients([-c for c in self.coeffs], self.precision)

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries.from_coefficients([c * other for c in self.coeffs], self.precision)

    def __rmul__(self, other) -> "PowerSeries":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "PowerSeries":
        return power(self, exponent)

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        return multiply(self, inverse(other))

    def substitute(self, m: int) -> "PowerSeries":
        """f(q^m), kept at the same precision"""
        if m < 1:
            raise InputValidationError(f"Substitution q -> q^m needs m >= 1, got {m}")
        coeffs = [0] * self.precision
        for n, c in enumerate(self.coeffs):
            if n * m >= self.precision:
                break
            coeffs[n * m] = c
        return PowerSeries.from_coefficients(coeffs, self.precision)

    def shift(self, k: int) -> "PowerSeries":
        """q^k f(q), kept at the same precision"""
        return PowerSeries.from_coefficients([0] * k + list(self.coeffs), self.precision)

    def as_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]


def multiply(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.precision, g.precision)
    a, b = f.coeffs, g.coeffs
    out: List[Coefficient] = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        for j in range(n - i):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return PowerSeries.from_coefficients(out, n)


def power(f: PowerSeries, exponent: int) -> PowerSeries:
    """Binary exponentiation of a truncated series"""
    if exponent < 0:
        return power(inverse(f), -exponent)
    result = PowerSeries.one(f.precision)
    base = f
    while exponent:
        if exponent & 1:
            result = multiply(result, base)
        exponent >>= 1
        if exponent:
            base = multiply(base, base)
    return result


def inverse(f: PowerSeries) -> PowerSeries:
    """1/f for f with a unit constant term"""
    lead = f.coeffs[0]
    if lead not in (1, -1):
        raise InputValidationError(f"Series inverse needs constant term +-1, got {lead}")
    n = f.precision
    out: List[Coefficient] = [0] * n
    out[0] = lead
    for k in range(1, n):
        acc = sum(f.coeffs[j] * out[k - j] for j in range(1, k + 1))
        out[k] = -acc * lead
    return PowerSeries.from_coefficients(out, n)


# ============== Named series ==============

def theta_basic(precision: int) -> PowerSeries:
    """theta(q) = sum over integers n of q^(n^2)"""
    coeffs = [0] * precision
    n = 0
    while n * n < precision:
        coeffs[n * n] += 1 if n == 0 else 2
        n += 1
    return PowerSeries.from_coefficients(coeffs, precision)


@lru_cache(maxsize=None)
def euler_product(precision: int) -> PowerSeries:
    """prod_{n >= 1} (1 - q^n) by the pentagonal number theorem"""
    coeffs = [0] * precision
    k = 0
    while True:
        done = True
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e < precision:
                coeffs[e] += -1 if k % 2 else 1
                done = False
        if done:
            break
        k += 1
    return PowerSeries.from_coefficients(coeffs, precision)


def f2_from_eta(precision: int) -> PowerSeries:
    """eta(4z)^8 / eta(2z)^4 = q prod (1-q^{4n})^8 / prod (1-q^{2n})^4"""
    product = euler_product(precision)
    numerator = power(product.substitute(4), 8)
    denominator = power(product.substitute(2), 4)
    return (numerator / denominator).shift(1)


def f2_from_divisors(precision: int) -> PowerSeries:
    """sum over odd n of sigma_1(n) q^n"""
    return PowerSeries.from_coefficients(
        [sigma(1, n) if n % 2 else 0 for n in range(precision)], precision
    )


def f2(precision: int) -> PowerSeries:
    """F_2 from both of its expressions, which must agree"""
    via_eta = f2_from_eta(precision)
    via_divisors = f2_from_divisors(precision)
    if via_eta != via_divisors:
        first = next(n for n in range(precision) if via_eta[n] != via_divisors[n])
        logger.error(f"F2 expressions disagree at q^{first}: {via_eta[first]} vs {via_divisors[first]}")
        raise ArithmeticError(f"F2 eta-quotient and divisor-sum series disagree at q^{first}")
    return via_eta


def theta_E7(precision: int) -> PowerSeries:
    """Theta series of the imaginary integral octonions: theta^7 + 112 theta^3 F_2"""
    theta = theta_basic(precision)
    return power(theta, 7) + 112 * (power(theta, 3) * f2(precision))


def theta_E8(precision: int) -> PowerSeries:
    """Theta series of the integral octonions: 1 + 240 sum sigma_3(n) q^n"""
    return PowerSeries.from_coefficients(
        [1] + [240 * sigma(3, n) for n in range(1, precision)], precision
    )


@lru_cache(maxsize=None)
def delta_expansion(precision: int) -> PowerSeries:
    """Delta = eta^24 = q prod (1 - q^n)^24"""
    if precision < 2:
        raise InputValidationError(f"delta_expansion needs precision >= 2, got {precision}")
    return power(euler_product(precision), 24).shift(1)


SERIES = {
    "theta": theta_basic,
    "thetaE7": theta_E7,
    "thetaE8": theta_E8,
    "delta": delta_expansion,
    "f2": f2,
}


__all__ = [
    "PowerSeries",
    "multiply",
    "power",
    "inverse",
    "theta_basic",
    "euler_product",
    "f2_from_eta",
    "f2_from_divisors",
    "f2",
    "theta_E7",
    "theta_E8",
    "delta_expansion",
    "SERIES",
]
