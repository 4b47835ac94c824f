"""
Siegel basis tables: Fourier coefficients A_{f_i}(S_j) of a basis f_1..f_d at
named indices S_j, read from CSV.

    label,O,u2,u6,D:1
    f1,1,240/691,...,...
    f4,0,0,0,1.2345e-3+-1e-40

One row per form, one column per named index. Entries are exact (integers,
num/den) or inexact (decimal, optionally mid±rad / mid+-rad).
"""

from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

import pandas as pd
import sympy
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from config.index_catalog import index_catalog
from models.errors import InputValidationError

SCHEMA_HINT = (
    "expected CSV with header 'label,<index1>,<index2>,...', one row per form, "
    "entries as integers, num/den, decimals or mid±rad"
)


class Entry(BaseModel):
    """One table value; inexact entries carry a midpoint and a radius"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    radius: Fraction = Fraction(0)
    exact: bool = True

    def as_sympy(self) -> sympy.Rational:
        return sympy.Rational(self.value.numerator, self.value.denominator)


def parse_entry(text: str) -> Entry:
    """'12', '-7/691', '0.125', '3.14159±1e-5' or '3.14159+-1e-5'"""
    raw = text.strip()
    if not raw:
        raise InputValidationError("Empty table entry")
    for separator in ("±", "+-"):
        if separator in raw:
            mid, _, rad = raw.partition(separator)
            try:
                radius = Fraction(rad.strip())
                value = Fraction(mid.strip())
            except (ValueError, ZeroDivisionError):
                raise InputValidationError(f"Cannot parse entry {raw!r}")
            if radius < 0:
                raise InputValidationError(f"Negative radius in {raw!r}")
            return Entry(value=value, radius=radius, exact=False)
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise InputValidationError(f"Cannot parse entry {raw!r}")
    # plain decimals are taken at face value but flagged inexact
    exact = not any(ch in raw for ch in ".eE")
    return Entry(value=value, exact=exact)


class BasisTable(BaseModel):
    """A_{f_i}(S_j) for forms f_i (rows) and named index columns S_j"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    weight: int
    forms: List[str]
    columns: List[str]
    entries: List[List[Entry]]
    rank: int = 0
    dependent_columns: List[str] = Field(default_factory=list)

    def is_exact(self) -> bool:
        return all(entry.exact for row in self.entries for entry in row)

    def column(self, label: str) -> List[Entry]:
        if label not in self.columns:
            raise InputValidationError(f"Column {label!r} is not in the basis table (have {self.columns})")
        j = self.columns.index(label)
        return [row[j] for row in self.entries]

    def system_matrix(self, columns: Optional[List[str]] = None) -> sympy.Matrix:
        """Rows indexed by the given columns, one column per form (midpoints)"""
        columns = self.columns if columns is None else columns
        return sympy.Matrix([[entry.as_sympy() for entry in self.column(label)] for label in columns])

    def rank_report(self) -> str:
        report = f"rank {self.rank} of {len(self.forms)} forms over {len(self.columns)} columns"
        if self.dependent_columns:
            report += f"; dependent: {', '.join(self.dependent_columns)}"
        return report


def column_rank_profile(matrix: sympy.Matrix, labels: List[str]) -> Tuple[int, List[str]]:
    """Rank of the row set and the rows that add nothing to the rows before them"""
    rank = 0
    dependent = []
    kept: List[List] = []
    for i, label in enumerate(labels):
        trial = sympy.Matrix(kept + [list(matrix.row(i))])
        if trial.rank() > rank:
            kept.append(list(matrix.row(i)))
            rank += 1
        else:
            dependent.append(label)
    return rank, dependent


def _suggest_columns(weight: int, present: List[str]) -> List[str]:
    suggestions: List[str] = []
    for key in index_catalog.get_system_keys():
        if not key.endswith(f"-{weight}"):
            continue
        system = index_catalog.get_system(*key.rsplit("-", 1)) or {}
        for label in system.get("columns", []) + system.get("held_out", []):
            if label not in present and label not in suggestions:
                suggestions.append(label)
    return suggestions


def ingest(path: str, weight: int) -> BasisTable:
    """
    Read and validate a basis table.

    Raises:
        InputValidationError: missing file, malformed rows, duplicate labels,
            or fewer columns than forms
    """
    file = Path(path)
    if not file.exists():
        raise InputValidationError(f"Basis file not found: {path}; {SCHEMA_HINT}")
    try:
        frame = pd.read_csv(file, dtype=str, header=None, keep_default_na=False, comment="#", skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise InputValidationError(f"Cannot read basis file {path}: {e}; {SCHEMA_HINT}") from e

    if frame.shape[0] < 2 or frame.shape[1] < 2:
        raise InputValidationError(f"Basis file {path} has no data; {SCHEMA_HINT}")
    header = [str(v).strip() for v in frame.iloc[0]]
    if header[0] != "label":
        raise InputValidationError(f"First header cell must be 'label', got {header[0]!r}; {SCHEMA_HINT}")
    columns = header[1:]
    if len(set(columns)) != len(columns):
        duplicates = sorted({c for c in columns if columns.count(c) > 1})
        raise InputValidationError(f"Duplicate column labels: {', '.join(duplicates)}")

    forms: List[str] = []
    entries: List[List[Entry]] = []
    for line, row in enumerate(frame.iloc[1:].itertuples(index=False), start=2):
        cells = [str(v) for v in row]
        label = cells[0].strip()
        if not label:
            raise InputValidationError(f"Row {line} has no form label")
        if label in forms:
            raise InputValidationError(f"Duplicate form label {label!r} at row {line}")
        try:
            entries.append([parse_entry(cell) for cell in cells[1:]])
        except InputValidationError as e:
            raise InputValidationError(f"Malformed row {line} ({label}): {e}") from e
        forms.append(label)

    if len(columns) < len(forms):
        raise InputValidationError(
            f"{len(forms)} forms but only {len(columns)} index columns; the system is underdetermined"
        )

    table = BasisTable(weight=weight, forms=forms, columns=columns, entries=entries)
    rank, dependent = column_rank_profile(table.system_matrix(), columns)
    table = table.model_copy(update={"rank": rank, "dependent_columns": dependent})

    for label in dependent:
        logger.warning(f"Column {label} is linearly dependent on the columns before it")
    if rank < len(forms):
        missing = _suggest_columns(weight, columns)
        hint = f"; try adding {', '.join(missing)}" if missing else ""
        logger.warning(f"Basis table is rank deficient: {table.rank_report()}{hint}")
    else:
        logger.info(f"✅ Ingested weight {weight} basis table: {table.rank_report()}")
    return table


__all__ = ["Entry", "BasisTable", "SCHEMA_HINT", "parse_entry", "column_rank_profile", "ingest"]
