"""
Integral octonion arithmetic.

Octonions are stored by their DOUBLED coordinates: dc = (dc0, ..., dc7) stands
for sum(dc_i / 2 * e_i). Every element of the Coxeter order lives in
1/2 * sum(Z e_i), so all arithmetic below stays in machine integers.

Multiplication table (e0 is the identity, e_i^2 = -e0 for i >= 1):

    e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b   for (a, b, c) in FANO_TRIPLES
    e_b e_a = -e_c, ...                           (reversed order negates)

This is the cyclic convention e_i e_{i+1} = e_{i+3} (indices 1..7 mod 7). The
alpha-basis below spans a lattice closed under it; verify_multiplication_table()
re-checks that at runtime.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import sympy
from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator

from models.errors import InputValidationError

FANO_TRIPLES: Tuple[Tuple[int, int, int], ...] = (
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 6),
    (4, 5, 7),
    (5, 6, 1),
    (6, 7, 2),
    (7, 1, 3),
)


def _build_basis_products() -> Dict[Tuple[int, int], Tuple[int, int]]:
    """Map (i, j) to (sign, k) such that e_i e_j = sign * e_k"""
    table: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for i in range(8):
        table[(0, i)] = (1, i)
        table[(i, 0)] = (1, i)
    for i in range(1, 8):
        table[(i, i)] = (-1, 0)
    for a, b, c in FANO_TRIPLES:
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            table[(p, q)] = (1, r)
            table[(q, p)] = (-1, r)
    if len(table) != 64:
        raise ArithmeticError(f"Multiplication table has {len(table)} entries, expected 64")
    return table


BASIS_PRODUCTS: Dict[Tuple[int, int], Tuple[int, int]] = _build_basis_products()

# Row-major lookup used by the scalar product loop
_PRODUCT_ROWS: List[List[Tuple[int, int]]] = [
    [BASIS_PRODUCTS[(i, j)] for j in range(8)] for i in range(8)
]


def _build_structure_constants() -> np.ndarray:
    """M[i, j, k] = sign with e_i e_j = sign * e_k, zero elsewhere"""
    constants = np.zeros((8, 8, 8), dtype=np.int64)
    for (i, j), (sign, k) in BASIS_PRODUCTS.items():
        constants[i, j, k] = sign
    return constants


STRUCTURE_CONSTANTS: np.ndarray = _build_structure_constants()


# ============== Values ==============

class Octonion(BaseModel):
    """Octonion sum(dc[i]/2 * e_i) held by its doubled integer coordinates"""
    model_config = ConfigDict(frozen=True)

    dc: Tuple[int, int, int, int, int, int, int, int]

    @field_validator("dc", mode="before")
    @classmethod
    def coerce_coordinates(cls, v):
        """Accept any length-8 integer sequence (lists, numpy rows)"""
        values = tuple(v)
        if len(values) != 8:
            raise ValueError(f"An octonion needs 8 doubled coordinates, got {len(values)}")
        coerced = []
        for value in values:
            if isinstance(value, float) or int(value) != value:
                raise ValueError(f"Doubled coordinates must be integers, got {value!r}")
            coerced.append(int(value))
        return tuple(coerced)

    @classmethod
    def raw(cls, dc: Iterable[int]) -> "Octonion":
        """Build without validation; callers guarantee eight python ints"""
        return cls.model_construct(dc=tuple(dc))

    @classmethod
    def basis(cls, i: int) -> "Octonion":
        coords = [0] * 8
        coords[i] = 2
        return cls.raw(coords)

    @classmethod
    def zero(cls) -> "Octonion":
        return cls.raw((0,) * 8)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence) -> "Octonion":
        """Build from ordinary e-coordinates (ints or Fractions in 1/2 Z)"""
        doubled = []
        for value in coefficients:
            twice = Fraction(value) * 2
            if twice.denominator != 1:
                raise InputValidationError(f"Coordinate {value} is not in 1/2 Z")
            doubled.append(int(twice))
        return cls(dc=doubled)

    @classmethod
    def scalar(cls, value) -> "Octonion":
        return cls.from_coefficients([value] + [0] * 7)

    # Arithmetic
    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion.raw(a + b for a, b in zip(self.dc, other.dc))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion.raw(a - b for a, b in zip(self.dc, other.dc))

    def __neg__(self) -> "Octonion":
        return Octonion.raw(-a for a in self.dc)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __bool__(self) -> bool:
        return any(self.dc)

    def conj(self) -> "Octonion":
        return conj(self)

    def norm(self) -> Fraction:
        return norm(self)

    def trace(self) -> Fraction:
        return trace(self)

    def real_part(self) -> Fraction:
        return Fraction(self.dc[0], 2)

    def imaginary_part(self) -> "Octonion":
        return Octonion.raw((0,) + self.dc[1:])

    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.dc)


# ============== Operations ==============

def multiply(x: Octonion, y: Octonion) -> Octonion:
    """Octonion product in the fixed table; exact in doubled coordinates"""
    xd, yd = x.dc, y.dc
    acc = [0] * 8
    for i in range(8):
        xi = xd[i]
        if not xi:
            continue
        row = _PRODUCT_ROWS[i]
        for j in range(8):
            yj = yd[j]
            if not yj:
                continue
            sign, k = row[j]
            acc[k] += sign * xi * yj
    # (xd/2)(yd/2) has doubled coordinates acc/2
    if any(v & 1 for v in acc):
        raise ArithmeticError(f"Product of {xd} and {yd} leaves the half-integral lattice")
    return Octonion.raw(v >> 1 for v in acc)


def scale(x: Octonion, factor) -> Octonion:
    """Multiply by a rational scalar, keeping doubled coordinates integral"""
    factor = Fraction(factor)
    out = []
    for v in x.dc:
        scaled = factor * v
        if scaled.denominator != 1:
            raise ArithmeticError(f"{factor} * {x.dc} is not representable in doubled coordinates")
        out.append(int(scaled))
    return Octonion.raw(out)


def conj(x: Octonion) -> Octonion:
    d = x.dc
    return Octonion.raw((d[0], -d[1], -d[2], -d[3], -d[4], -d[5], -d[6], -d[7]))


def norm(x: Octonion) -> Fraction:
    return Fraction(sum(v * v for v in x.dc), 4)


def trace(x: Octonion) -> Fraction:
    # Tr(x) = 2 x0 = dc0
    return Fraction(x.dc[0])


def bilinear_trace(x: Octonion, y: Octonion) -> Fraction:
    """tr(x * conj(y)) = 2 * sum(x_i y_i)"""
    return Fraction(sum(a * b for a, b in zip(x.dc, y.dc)), 2)


def is_imaginary(x: Octonion) -> bool:
    return x.dc[0] == 0


# ============== The Coxeter order ==============

# alpha_0..alpha_7 in doubled e-coordinates
ALPHA_DOUBLED: Tuple[Tuple[int, ...], ...] = (
    (2, 0, 0, 0, 0, 0, 0, 0),      # e0
    (0, 2, 0, 0, 0, 0, 0, 0),      # e1
    (0, 0, 2, 0, 0, 0, 0, 0),      # e2
    (0, 0, 0, 0, -2, 0, 0, 0),     # -e4
    (0, 1, 1, 1, 1, 0, 0, 0),      # (e1+e2+e3+e4)/2
    (-1, -1, 0, 0, -1, 1, 0, 0),   # (-e0-e1-e4+e5)/2
    (-1, 1, -1, 0, 0, 0, 1, 0),    # (-e0+e1-e2+e6)/2
    (-1, 0, 1, 0, 1, 0, 0, 1),     # (-e0+e2+e4+e7)/2
)


class BasisMatrix(BaseModel):
    """alpha-basis of the integral octonions and its exact inverse"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha_to_e: Tuple[Tuple[Fraction, ...], ...]
    e_to_alpha: Tuple[Tuple[Fraction, ...], ...]
    determinant: Fraction

    @classmethod
    def build(cls) -> "BasisMatrix":
        forward = sympy.Matrix(ALPHA_DOUBLED) / 2
        inverse = forward.inv()
        to_fraction = lambda m: tuple(
            tuple(Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(8)) for i in range(8)
        )
        det = forward.det()
        return cls(
            alpha_to_e=to_fraction(forward),
            e_to_alpha=to_fraction(inverse),
            determinant=Fraction(int(det.p), int(det.q)),
        )


BASIS_MATRIX: BasisMatrix = BasisMatrix.build()

if any(v.denominator != 1 for row in BASIS_MATRIX.e_to_alpha for v in row):
    raise ArithmeticError("e_i must have integral alpha-coordinates")

# Integer copy of the inverse for vectorised membership tests
E_TO_ALPHA_INT: np.ndarray = np.array(
    [[int(v) for v in row] for row in BASIS_MATRIX.e_to_alpha], dtype=np.int64
)

ALPHA: Tuple[Octonion, ...] = tuple(Octonion.raw(row) for row in ALPHA_DOUBLED)
E: Tuple[Octonion, ...] = tuple(Octonion.basis(i) for i in range(8))


def alpha_coordinates(x: Octonion) -> Tuple[Fraction, ...]:
    """Coordinates of x in the alpha-basis (x = sum a_i alpha_i)"""
    # a = (dc/2) . e_to_alpha
    return tuple(
        sum((Fraction(x.dc[i], 2) * BASIS_MATRIX.e_to_alpha[i][j] for i in range(8)), Fraction(0))
        for j in range(8)
    )


def is_integral(x: Octonion) -> bool:
    return all(a.denominator == 1 for a in alpha_coordinates(x))


def is_imaginary_integral(x: Octonion) -> bool:
    return is_imaginary(x) and is_integral(x)


def content(x: Octonion) -> int:
    """Largest g >= 0 with x/g integral; content(0) = 0"""
    coordinates = alpha_coordinates(x)
    if any(a.denominator != 1 for a in coordinates):
        raise InputValidationError(f"content() needs an integral octonion, got {x.dc}")
    return reduce(gcd, (abs(int(a)) for a in coordinates), 0)


# ============== Vectorised helpers (rows of doubled coordinates) ==============

def left_multiplication_matrix(dc: Sequence[int]) -> np.ndarray:
    """L with (Z @ L) = 2 * doubled coordinates of x*z for every row z of Z"""
    return np.tensordot(np.asarray(dc, dtype=np.int64), STRUCTURE_CONSTANTS, axes=(0, 0))


def batch_left_multiply(dc: Sequence[int], rows: np.ndarray) -> np.ndarray:
    """Doubled coordinates of x*z for each row z"""
    twice = rows @ left_multiplication_matrix(dc)
    if np.any(twice & 1):
        raise ArithmeticError("Batch product leaves the half-integral lattice")
    return twice >> 1


def batch_conj(rows: np.ndarray) -> np.ndarray:
    out = -rows
    out[:, 0] = rows[:, 0]
    return out


def batch_alpha_twice(rows: np.ndarray) -> np.ndarray:
    """Twice the alpha-coordinates of each row (integers)"""
    return rows @ E_TO_ALPHA_INT


def integral_mask(rows: np.ndarray) -> np.ndarray:
    return np.all((batch_alpha_twice(rows) & 1) == 0, axis=1)


def batch_content(rows: np.ndarray) -> np.ndarray:
    """Content of each (integral) row; zero rows give 0"""
    twice = batch_alpha_twice(rows)
    if np.any(twice & 1):
        raise InputValidationError("batch_content() needs integral rows")
    return np.gcd.reduce(np.abs(twice >> 1), axis=1)


def batch_norm_times_four(rows: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", rows, rows)


# ============== Certification ==============

def norm_one_rows() -> np.ndarray:
    """The 240 units of the order: +-2e_i and the integral (+-1)^4 patterns, in doubled coordinates"""
    rows = [sign * 2 * np.eye(8, dtype=np.int64)[i] for i in range(8) for sign in (1, -1)]
    for support in combinations(range(8), 4):
        for signs in product((1, -1), repeat=4):
            row = np.zeros(8, dtype=np.int64)
            row[list(support)] = signs
            rows.append(row)
    rows = np.array(rows, dtype=np.int64)
    return rows[integral_mask(rows)]


def _unit_products_closed(units: np.ndarray) -> Tuple[bool, bool]:
    """(composition, closure) over every ordered pair of units"""
    composition = closure = True
    for x in units:
        twice = units @ left_multiplication_matrix(x)
        if np.any(twice & 1):
            return False, False
        products = twice >> 1
        composition &= bool(np.all(batch_norm_times_four(products) == 4))
        closure &= bool(np.all(integral_mask(products)))
    return composition, closure


def verify_multiplication_table() -> Dict[str, bool]:
    """
    Check identity, composition and closure of the alpha-span for the fixed
    table, then composition and closure over all 240 x 240 pairs of units.
    """
    identity = all(multiply(E[0], e) == e and multiply(e, E[0]) == e for e in E)

    composition = True
    closure = True
    samples = list(ALPHA) + [a + b for a in ALPHA for b in ALPHA]
    for x in samples:
        for y in ALPHA:
            try:
                product = multiply(x, y)
            except ArithmeticError:
                closure = False
                continue
            if norm(product) != norm(x) * norm(y):
                composition = False
    for a in ALPHA:
        for b in ALPHA:
            if not is_integral(multiply(a, b)):
                closure = False

    report = {
        "identity": identity,
        "composition": composition,
        "closure": closure,
        "determinant": BASIS_MATRIX.determinant in (Fraction(1, 16), Fraction(-1, 16)),
    }
    units = norm_one_rows()
    unit_composition, unit_closure = _unit_products_closed(units)
    report["units"] = len(units) == 240
    report["unit_composition"] = unit_composition
    report["unit_closure"] = unit_closure
    report["success"] = all(report.values())
    if report["success"]:
        logger.debug("✅ Octonion multiplication table certified")
    else:
        logger.error(f"Octonion multiplication table failed certification: {report}")
    return report


__all__ = [
    "FANO_TRIPLES",
    "BASIS_PRODUCTS",
    "STRUCTURE_CONSTANTS",
    "Octonion",
    "BasisMatrix",
    "BASIS_MATRIX",
    "ALPHA",
    "ALPHA_DOUBLED",
    "E",
    "multiply",
    "scale",
    "conj",
    "norm",
    "trace",
    "bilinear_trace",
    "is_imaginary",
    "is_integral",
    "is_imaginary_integral",
    "alpha_coordinates",
    "content",
    "left_multiplication_matrix",
    "batch_left_multiply",
    "batch_conj",
    "batch_alpha_twice",
    "integral_mask",
    "batch_content",
    "batch_norm_times_four",
    "norm_one_rows",
    "verify_multiplication_table",
]
