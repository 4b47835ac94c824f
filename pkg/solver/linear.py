"""
Solve restriction = sum c_i f_i from values at named indices.

Exact tables are solved over Q with sympy (right-hand sides may carry symbols).
Tables with inexact entries are solved in mpmath interval arithmetic and every
c_i comes back as an enclosure.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Union

import mpmath
import sympy
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from models.errors import InconsistentSystemError, InputValidationError, UnsupportedCaseError

from .basis_table import BasisTable, Entry, column_rank_profile, parse_entry

RhsValue = Union[Fraction, sympy.Expr, Entry]


def parse_rhs_value(text: str) -> RhsValue:
    """Exact rational, inexact mid±rad entry, or a bare identifier standing for an unknown"""
    raw = str(text).strip()
    if raw.isidentifier():
        return sympy.Symbol(raw)
    entry = parse_entry(raw)
    return entry.value if entry.exact else entry


class CoefficientTable(BaseModel):
    """Restricted coefficients keyed by named index label"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    values: Dict[str, RhsValue] = Field(default_factory=dict)

    @classmethod
    def from_strings(cls, values: Dict[str, str]) -> "CoefficientTable":
        return cls(values={label: parse_rhs_value(v) for label, v in values.items()})

    def labels(self) -> List[str]:
        return list(self.values.keys())

    def get(self, label: str) -> RhsValue:
        if label not in self.values:
            raise InputValidationError(f"No right-hand side value for column {label}")
        return self.values[label]

    def has(self, label: str) -> bool:
        return label in self.values

    def is_symbolic(self) -> bool:
        return any(isinstance(v, sympy.Expr) and not v.is_number for v in self.values.values())

    def is_exact(self) -> bool:
        return not any(isinstance(v, Entry) for v in self.values.values())


class SolveResult(BaseModel):
    """c_i as exact values (possibly affine in rhs symbols) or as midpoint/radius enclosures"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    forms: List[str]
    columns: List[str]
    exact: bool
    coefficients: Dict[str, object]
    radii: Dict[str, object] = Field(default_factory=dict)
    residual: object = 0
    held_out: Dict[str, bool] = Field(default_factory=dict)

    def coefficient(self, form: str):
        return self.coefficients[form]


def _to_sympy(value: RhsValue) -> sympy.Expr:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, Entry):
        return sympy.Rational(value.value.numerator, value.value.denominator)
    return sympy.sympify(value)


def _independent_columns(basis: BasisTable, columns: List[str]) -> List[str]:
    rank, dependent = column_rank_profile(basis.system_matrix(columns), columns)
    if rank < len(basis.forms):
        raise InputValidationError(
            f"Columns {columns} have rank {rank} < {len(basis.forms)} forms; add more named indices"
        )
    return [label for label in columns if label not in dependent][: len(basis.forms)]


# ============== Exact ==============

def _solve_exact(basis: BasisTable, rhs: CoefficientTable, columns: List[str]) -> Dict[str, sympy.Expr]:
    square = _independent_columns(basis, columns)
    A = basis.system_matrix(square)
    b = sympy.Matrix([_to_sympy(rhs.get(label)) for label in square])
    solution = A.LUsolve(b)
    return {form: sympy.simplify(solution[i]) for i, form in enumerate(basis.forms)}


def _exact_residual(basis: BasisTable, rhs: CoefficientTable, coefficients: Dict[str, sympy.Expr], label: str) -> sympy.Expr:
    row = basis.column(label)
    combination = sum(
        (entry.as_sympy() * coefficients[form] for entry, form in zip(row, basis.forms)),
        sympy.Integer(0),
    )
    return sympy.simplify(combination - _to_sympy(rhs.get(label)))


# ============== Interval ==============

def _interval(value: Fraction, radius: Fraction = Fraction(0)):
    centre = mpmath.iv.mpf(value.numerator) / value.denominator
    if radius:
        spread = mpmath.iv.mpf(radius.numerator) / radius.denominator
        centre += spread * mpmath.iv.mpf([-1, 1])
    return centre


def _entry_interval(entry: Union[Entry, Fraction]):
    if isinstance(entry, Entry):
        return _interval(entry.value, entry.radius)
    return _interval(entry)


def _solve_interval(basis: BasisTable, rhs: CoefficientTable, columns: List[str]) -> List:
    """Gaussian elimination with pivots chosen by midpoint magnitude"""
    square = _independent_columns(basis, columns)
    n = len(basis.forms)
    rows = [[_entry_interval(e) for e in basis.column(label)] + [_entry_interval(rhs.get(label))] for label in square]

    for k in range(n):
        pivot = max(range(k, n), key=lambda i: abs(mpmath.mpf(rows[i][k].mid)))
        rows[k], rows[pivot] = rows[pivot], rows[k]
        if 0 in rows[k][k]:
            raise InputValidationError(
                f"Pivot enclosure {rows[k][k]} contains zero; supply tighter entries or more precision"
            )
        for i in range(k + 1, n):
            factor = rows[i][k] / rows[k][k]
            rows[i] = [rows[i][j] - factor * rows[k][j] for j in range(n + 1)]

    solution = [mpmath.iv.mpf(0)] * n
    for k in reversed(range(n)):
        acc = rows[k][n]
        for j in range(k + 1, n):
            acc -= rows[k][j] * solution[j]
        solution[k] = acc / rows[k][k]
    return solution


def _interval_residual(basis: BasisTable, rhs: CoefficientTable, solution: List, label: str):
    total = mpmath.iv.mpf(0)
    for entry, c in zip(basis.column(label), solution):
        total += _entry_interval(entry) * c
    return total - _entry_interval(rhs.get(label))


# ============== Entry point ==============

def solve_expansion(
    basis: BasisTable,
    rhs: CoefficientTable,
    columns: Optional[List[str]] = None,
    held_out: Optional[List[str]] = None,
    precision: Optional[int] = None,
) -> SolveResult:
    """
    Solve for c_i over the given columns (default: every basis column the rhs
    covers), then check the held-out columns. Interval solves run at
    `precision` digits (default settings.DEFAULT_PRECISION).

    Raises:
        InputValidationError: rank deficiency or missing rhs values
        InconsistentSystemError: a used or held-out column is not satisfied
        UnsupportedCaseError: symbolic rhs with an inexact basis
    """
    digits = settings.DEFAULT_PRECISION if precision is None else precision
    if digits < 1:
        raise InputValidationError(f"Interval precision must be >= 1 digit, got {digits}")
    columns = columns or [label for label in basis.columns if rhs.has(label)]
    missing = [label for label in columns if label not in basis.columns]
    if missing:
        raise InputValidationError(f"Basis table has no column for {', '.join(missing)}")
    held_out = [label for label in (held_out or []) if label in basis.columns and rhs.has(label)]

    exact = basis.is_exact() and rhs.is_exact()
    if not exact and rhs.is_symbolic():
        raise UnsupportedCaseError("Symbolic right-hand sides need an exact basis table")

    if exact:
        coefficients = _solve_exact(basis, rhs, columns)
        for label in columns:
            if _exact_residual(basis, rhs, coefficients, label) != 0:
                logger.error(f"Column {label} is not satisfied by the exact solution")
                raise InconsistentSystemError(f"Overdetermined system is inconsistent at {label}", column=label)
        checks: Dict[str, bool] = {}
        for label in held_out:
            checks[label] = _exact_residual(basis, rhs, coefficients, label) == 0
            if not checks[label]:
                logger.error(f"Held-out column {label} disagrees with the solution")
                raise InconsistentSystemError(f"Held-out consistency check failed at {label}", column=label)
        logger.info(f"✅ Exact solve over {columns}: {len(held_out)} held-out columns verified")
        return SolveResult(
            forms=basis.forms, columns=columns, exact=True,
            coefficients=coefficients, residual=0, held_out=checks,
        )

    saved = mpmath.iv.dps
    mpmath.iv.dps = digits
    try:
        solution = _solve_interval(basis, rhs, columns)
        widest = mpmath.mpf(0)
        checks = {}
        for label in columns + held_out:
            residual = _interval_residual(basis, rhs, solution, label)
            widest = max(widest, mpmath.mpf(residual.delta))
            if 0 not in residual:
                logger.error(f"Column {label}: residual enclosure {residual} excludes zero")
                raise InconsistentSystemError(f"Enclosure check failed at {label}", column=label)
            if label in held_out:
                checks[label] = True
        # mid and delta of an interval are point intervals
        coefficients = {form: mpmath.mpf(c.mid) for form, c in zip(basis.forms, solution)}
        radii = {form: mpmath.mpf(c.delta) / 2 for form, c in zip(basis.forms, solution)}
    finally:
        mpmath.iv.dps = saved

    logger.info(f"✅ Interval solve over {columns} at {digits} digits")
    return SolveResult(
        forms=basis.forms, columns=columns, exact=False,
        coefficients=coefficients, radii=radii, residual=widest, held_out=checks,
    )


__all__ = ["CoefficientTable", "SolveResult", "parse_rhs_value", "solve_expansion"]
