"""
The exceptional Jordan algebra: Hermitian 3x3 matrices over the octonions.

    T = [[a, x, y],
         [x', b, z],
         [y', z', c]]        (' = octonion conjugate)

Only the upper triangle is stored. Diagonal entries are exact rationals so
intermediate reduction states fit the same type; integrality is a predicate.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Tuple

import sympy
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator

from models.errors import InputValidationError, UnsupportedCaseError

from .octonion import (
    Octonion,
    bilinear_trace,
    conj,
    content,
    is_integral,
    multiply,
    norm,
    scale,
)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ValueError(f"Floats are not exact, got {value!r}")
    return Fraction(value)


# ============== Domain Types ==============

class HalfIntegralSym3(BaseModel):
    """Half-integral symmetric 3x3 matrix: integer diagonal, off-diagonal in 1/2 Z"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: int
    b: int
    c: int
    s12: Fraction = Fraction(0)
    s13: Fraction = Fraction(0)
    s23: Fraction = Fraction(0)

    @field_validator("s12", "s13", "s23", mode="before")
    @classmethod
    def half_integral(cls, v):
        """Off-diagonal entries must lie in 1/2 Z"""
        value = _as_fraction(v)
        if (value * 2).denominator != 1:
            raise ValueError(f"Off-diagonal entry {value} is not in 1/2 Z")
        return value

    @classmethod
    def diagonal(cls, a: int, b: int, c: int) -> "HalfIntegralSym3":
        return cls(a=a, b=b, c=c)

    @classmethod
    def from_rows(cls, rows: List[List]) -> "HalfIntegralSym3":
        """Build from a full symmetric 3x3 nested list"""
        m = [[_as_fraction(v) for v in row] for row in rows]
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise InputValidationError("A Sym3 matrix needs 3 rows of 3 entries")
        for i in range(3):
            for j in range(i + 1, 3):
                if m[i][j] != m[j][i]:
                    raise InputValidationError(f"Matrix is not symmetric at ({i + 1},{j + 1})")
        for i in range(3):
            if m[i][i].denominator != 1:
                raise InputValidationError(f"Diagonal entry {m[i][i]} is not an integer")
        return cls(
            a=int(m[0][0]), b=int(m[1][1]), c=int(m[2][2]),
            s12=m[0][1], s13=m[0][2], s23=m[1][2],
        )

    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        a, b, c = Fraction(self.a), Fraction(self.b), Fraction(self.c)
        return (
            (a, self.s12, self.s13),
            (self.s12, b, self.s23),
            (self.s13, self.s23, c),
        )

    def diagonal_entries(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def off_diagonal(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.s12, self.s13, self.s23)

    def det(self) -> Fraction:
        a, b, c = self.a, self.b, self.c
        x, y, z = self.s12, self.s13, self.s23
        return a * b * c + 2 * x * y * z - a * z * z - b * y * y - c * x * x

    def is_pd(self) -> bool:
        return self.a > 0 and self.a * self.b - self.s12 ** 2 > 0 and self.det() > 0

    def to_jordan(self) -> "JordanElement":
        return JordanElement(
            a=self.a, b=self.b, c=self.c,
            x=Octonion.scalar(self.s12),
            y=Octonion.scalar(self.s13),
            z=Octonion.scalar(self.s23),
        )

    def label(self) -> str:
        return "[[{},{},{}],[{},{},{}],[{},{},{}]]".format(*(v for row in self.rows() for v in row))


class JordanElement(BaseModel):
    """Hermitian 3x3 octonion matrix: diagonal a, b, c and entries x (1,2), y (1,3), z (2,3)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: Fraction
    b: Fraction
    c: Fraction
    x: Octonion = Field(default_factory=Octonion.zero)
    y: Octonion = Field(default_factory=Octonion.zero)
    z: Octonion = Field(default_factory=Octonion.zero)

    @field_validator("a", "b", "c", mode="before")
    @classmethod
    def exact_diagonal(cls, v):
        return _as_fraction(v)

    @classmethod
    def raw(cls, a, b, c, x: Octonion, y: Octonion, z: Octonion) -> "JordanElement":
        return cls.model_construct(
            a=_as_fraction(a), b=_as_fraction(b), c=_as_fraction(c), x=x, y=y, z=z
        )

    @classmethod
    def diagonal(cls, a, b, c) -> "JordanElement":
        zero = Octonion.zero()
        return cls.raw(a, b, c, zero, zero, zero)

    def diagonal_entries(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def entry(self, i: int, j: int):
        """Entry (i, j) with 0-based indices; diagonal entries are Fractions"""
        if i == j:
            return self.diagonal_entries()[i]
        upper = {(0, 1): self.x, (0, 2): self.y, (1, 2): self.z}
        if (i, j) in upper:
            return upper[(i, j)]
        return conj(upper[(j, i)])

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.x or self.y or self.z)

    def __add__(self, other: "JordanElement") -> "JordanElement":
        return JordanElement.raw(
            self.a + other.a, self.b + other.b, self.c + other.c,
            self.x + other.x, self.y + other.y, self.z + other.z,
        )


class LocalData(BaseModel):
    """d(T) = (content T, content T x T, det T) and per-prime valuations of each"""
    d1: int
    d2: int
    d3: int
    tau: Dict[int, Tuple[int, int, int]] = Field(default_factory=dict)

    def triple(self) -> Tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)


# ============== Operations ==============

def cross(T: JordanElement) -> JordanElement:
    """The Freudenthal product T x T, transcribed entry by entry"""
    a, b, c, x, y, z = T.a, T.b, T.c, T.x, T.y, T.z
    return JordanElement.raw(
        b * c - norm(z),
        a * c - norm(y),
        a * b - norm(x),
        multiply(y, conj(z)) - scale(x, c),
        multiply(x, z) - scale(y, b),
        multiply(conj(x), y) - scale(z, a),
    )


def det(T: JordanElement) -> Fraction:
    a, b, c, x, y, z = T.a, T.b, T.c, T.x, T.y, T.z
    return (
        a * b * c
        - a * norm(z)
        - b * norm(y)
        - c * norm(x)
        + bilinear_trace(multiply(x, z), y)
    )


def trace(T: JordanElement) -> Fraction:
    return T.a + T.b + T.c


def _minors(T: JordanElement) -> Tuple[Fraction, Fraction, Fraction]:
    return (
        T.a * T.b - norm(T.x),
        T.a * T.c - norm(T.y),
        T.b * T.c - norm(T.z),
    )


def is_psd(T: JordanElement) -> bool:
    if min(T.diagonal_entries()) < 0:
        return False
    if min(_minors(T)) < 0:
        return False
    return det(T) >= 0


def is_pd(T: JordanElement) -> bool:
    if min(T.diagonal_entries()) <= 0:
        return False
    if min(_minors(T)) <= 0:
        return False
    return det(T) > 0


def is_integral_element(T: JordanElement) -> bool:
    if any(v.denominator != 1 for v in T.diagonal_entries()):
        return False
    return all(is_integral(w) for w in (T.x, T.y, T.z))


def _require_integral(T: JordanElement, operation: str) -> None:
    if not is_integral_element(T):
        raise InputValidationError(f"{operation} needs an integral Jordan element")


def split(T: JordanElement) -> Tuple[HalfIntegralSym3, JordanElement]:
    """T = T1 + T2 with T1 half-integral symmetric and T2 imaginary off-diagonal"""
    _require_integral(T, "split")
    t1 = HalfIntegralSym3(
        a=int(T.a), b=int(T.b), c=int(T.c),
        s12=T.x.real_part(), s13=T.y.real_part(), s23=T.z.real_part(),
    )
    t2 = JordanElement.raw(
        0, 0, 0, T.x.imaginary_part(), T.y.imaginary_part(), T.z.imaginary_part()
    )
    return t1, t2


def trace_pairing(X: JordanElement, Y: JordanElement) -> Fraction:
    """(X, Y) = Tr(X o Y)"""
    diagonal = X.a * Y.a + X.b * Y.b + X.c * Y.c
    return diagonal + bilinear_trace(X.x, Y.x) + bilinear_trace(X.y, Y.y) + bilinear_trace(X.z, Y.z)


def element_content(T: JordanElement) -> int:
    """gcd of the diagonal entries and the contents of the octonion entries"""
    _require_integral(T, "content")
    parts = [abs(int(v)) for v in T.diagonal_entries()]
    parts += [content(w) for w in (T.x, T.y, T.z)]
    return reduce(gcd, parts, 0)


def local_data(T: JordanElement) -> LocalData:
    _require_integral(T, "local_data")
    d3 = det(T)
    if d3 < 0:
        raise InputValidationError(f"local_data needs det(T) >= 0, got {d3}")
    d1 = element_content(T)
    d2 = element_content(cross(T))
    d3 = int(d3)

    tau: Dict[int, Tuple[int, int, int]] = {}
    if d3 > 0:
        for p in sorted(sympy.factorint(d3)):
            tau[p] = tuple(int(sympy.multiplicity(p, d)) for d in (d1, d2, d3))
    return LocalData(d1=d1, d2=d2, d3=d3, tau=tau)


def jordan_rank(T: JordanElement) -> int:
    """Rank via the adjugate characterisation: T = 0, T x T = 0, det T = 0"""
    if T.is_zero():
        return 0
    if cross(T).is_zero():
        return 1
    if det(T) == 0:
        return 2
    return 3


def pivot_reduce(T: JordanElement) -> HalfIntegralSym3:
    """
    Complete the square on a unit diagonal entry and return the diagonal form
    T reduces to: diag(1, 1, n), diag(1, m, 0) or diag(1, 0, 0).

    Raises:
        InputValidationError: T is not integral or not positive semidefinite
        UnsupportedCaseError: no unit pivot is available at some step
    """
    _require_integral(T, "pivot_reduce")
    if not is_psd(T):
        raise InputValidationError("pivot_reduce needs a positive semidefinite element")

    diagonal = T.diagonal_entries()
    pivot = next((i for i in range(3) if diagonal[i] == 1), None)
    if pivot is None:
        raise UnsupportedCaseError("pivot_reduce: no diagonal entry equals 1")

    j, k = (i for i in range(3) if i != pivot)
    u = T.entry(j, pivot)
    v = T.entry(pivot, k)
    b = diagonal[j] - norm(u)
    c = diagonal[k] - norm(v)
    w = T.entry(j, k) - multiply(u, v)

    if b == 1 or c == 1:
        remaining = (c if b == 1 else b) - norm(w)
        return HalfIntegralSym3.diagonal(1, 1, int(remaining))
    if not w:
        m, n = sorted((int(b), int(c)), reverse=True)
        return HalfIntegralSym3.diagonal(1, m, n)
    if b == 0 or c == 0:
        logger.error(f"pivot_reduce produced a non-psd block b={b}, c={c}, w={w.dc}")
        raise ArithmeticError("Reduced block is not positive semidefinite")
    raise UnsupportedCaseError(f"pivot_reduce: reduced block [[{b}, w], [w', {c}]] has no unit corner")


# ============== Serialization ==============

def _format_rational(value: Fraction):
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def serialize_element(T: JordanElement) -> str:
    """Canonical text form: {"diag": [a, b, c], "x": [8 ints], "y": [...], "z": [...]}"""
    payload = {
        "diag": [_format_rational(v) for v in T.diagonal_entries()],
        "x": list(T.x.dc),
        "y": list(T.y.dc),
        "z": list(T.z.dc),
    }
    return json.dumps(payload, separators=(",", ":"))


def parse_element(text: str) -> JordanElement:
    try:
        payload = json.loads(text)
        diag = payload["diag"]
        if len(diag) != 3:
            raise ValueError("diag needs three entries")
        octonions = [Octonion(dc=payload.get(key, [0] * 8)) for key in ("x", "y", "z")]
        a, b, c = (Fraction(str(v)) for v in diag)
    except (ValueError, KeyError, TypeError) as e:
        raise InputValidationError(
            f"Cannot parse Jordan element {text!r}: {e}. "
            'Expected {"diag":[a,b,c],"x":[8 ints],"y":[8 ints],"z":[8 ints]} with doubled coordinates'
        ) from e
    return JordanElement.raw(a, b, c, *octonions)


__all__ = [
    "HalfIntegralSym3",
    "JordanElement",
    "LocalData",
    "cross",
    "det",
    "trace",
    "is_psd",
    "is_pd",
    "is_integral_element",
    "split",
    "trace_pairing",
    "element_content",
    "local_data",
    "jordan_rank",
    "pivot_reduce",
    "serialize_element",
    "parse_element",
]
