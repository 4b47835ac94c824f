#!/usr/bin/env python3
"""
Test suite for basis table ingestion and the linear solve of a restriction
in a Siegel basis
"""

import os
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from loguru import logger

from cli import load_rhs
from models.errors import InconsistentSystemError, InputValidationError, UnsupportedCaseError
from solver.basis_table import Entry, ingest, parse_entry
from solver.linear import CoefficientTable, parse_rhs_value, solve_expansion

SYNTHETIC_BASIS = os.path.join(os.path.dirname(__file__), "..", "data", "example_basis.csv")
EXPECTED = {"f1": Fraction(2), "f2": Fraction(-1, 3), "f3": Fraction(5)}


def identity_table(size: int) -> str:
    header = "label," + ",".join(f"c{j}" for j in range(size))
    rows = [f"f{i}," + ",".join("1" if i == j else "0" for j in range(size)) for i in range(size)]
    return "\n".join([header] + rows) + "\n"


def create_rhs(**values) -> CoefficientTable:
    return CoefficientTable.from_strings({label.replace("_", ":"): str(v) for label, v in values.items()})


# ============== Entries ==============

def test_parse_entry():
    assert parse_entry("12") == Entry(value=Fraction(12))
    assert parse_entry(" -7/691 ").value == Fraction(-7, 691)

    decimal = parse_entry("0.125")
    assert decimal.value == Fraction(1, 8)
    assert not decimal.exact

    enclosed = parse_entry("3.5±0.25")
    assert (enclosed.value, enclosed.radius, enclosed.exact) == (Fraction(7, 2), Fraction(1, 4), False)
    assert parse_entry("1e-3+-1e-9").radius == Fraction(1, 10 ** 9)

    for bad in ("", "abc", "1/0", "1+-", "1±-1"):
        with pytest.raises(InputValidationError):
            parse_entry(bad)


def test_rhs_values():
    table = CoefficientTable.from_strings({"O": "2", "H": "d", "W": "1.5+-0.1"})
    assert table.get("O") == Fraction(2)
    assert table.get("H") == sympy.Symbol("d")
    assert isinstance(table.get("W"), Entry)
    assert table.is_symbolic()
    assert not table.is_exact()
    assert parse_rhs_value("13") == 13
    with pytest.raises(InputValidationError):
        table.get("G")


# ============== Ingestion ==============

def test_ingest_synthetic_table(synthetic_basis_path, log_messages):
    logger.info("🔍 Ingesting the synthetic basis table...")
    basis = ingest(synthetic_basis_path, 12)
    assert basis.forms == ["f1", "f2", "f3"]
    assert basis.columns == ["O", "u2", "D:1", "D:2"]
    assert basis.rank == 3
    assert basis.dependent_columns == ["D:2"]
    assert basis.is_exact()
    assert any("D:2" in message for message in log_messages)


def test_full_rank_identity(write_table):
    basis = ingest(write_table(identity_table(6)), 16)
    assert basis.rank == 6
    assert basis.dependent_columns == []


def test_repeated_column_is_reported(write_table, log_messages):
    path = write_table("label,O,u2,again\nf1,1,0,1\nf2,0,1,0\n")
    basis = ingest(path, 12)
    assert basis.rank == 2
    assert basis.dependent_columns == ["again"]
    assert any("again" in message for message in log_messages)


def test_rank_deficiency_suggests_columns(write_table, log_messages):
    path = write_table("label,O,u2\nf1,1,2\nf2,2,4\n")
    basis = ingest(path, 12)
    assert basis.rank == 1
    assert "rank 1 of 2 forms" in basis.rank_report()
    warning = next(m for m in log_messages if "rank deficient" in m)
    assert "u6" in warning


def test_underdetermined_table_is_rejected(write_table):
    rows = "\n".join(f"f{i},1,0,0,0" for i in range(6))
    with pytest.raises(InputValidationError, match="underdetermined"):
        ingest(write_table("label,O,u2,u6,D:1\n" + rows + "\n"), 16)


def test_malformed_tables(write_table):
    with pytest.raises(InputValidationError, match="label"):
        ingest("does/not/exist.csv", 12)
    with pytest.raises(InputValidationError, match="Duplicate column"):
        ingest(write_table("label,O,O\nf1,1,0\n"), 12)
    with pytest.raises(InputValidationError, match="Duplicate form"):
        ingest(write_table("label,O,u2\nf1,1,0\nf1,0,1\n"), 12)
    with pytest.raises(InputValidationError, match="Malformed row 2"):
        ingest(write_table("label,O,u2\nf1,1,abc\n"), 12)
    with pytest.raises(InputValidationError, match="'label'"):
        ingest(write_table("name,O\nf1,1\n"), 12)
    with pytest.raises(InputValidationError):
        ingest(write_table("label,O\n"), 12)


# ============== Exact solve ==============

def test_identity_solve(write_table):
    basis = ingest(write_table(identity_table(3)), 12)
    rhs = CoefficientTable.from_strings({"c0": "1", "c1": "2", "c2": "3"})
    result = solve_expansion(basis, rhs)
    assert result.exact
    assert [result.coefficient(f) for f in ("f0", "f1", "f2")] == [1, 2, 3]


def test_synthetic_solve(synthetic_basis_path, synthetic_rhs_path):
    basis = ingest(synthetic_basis_path, 12)
    result = solve_expansion(basis, load_rhs(synthetic_rhs_path))
    for form, value in EXPECTED.items():
        assert result.coefficient(form) == sympy.Rational(value.numerator, value.denominator)
    assert result.residual == 0


def test_held_out_column_is_verified(synthetic_basis_path):
    basis = ingest(synthetic_basis_path, 12)
    rhs = create_rhs(O="2", u2="2/3", D_1="13", D_2="43/3")
    result = solve_expansion(basis, rhs, columns=["O", "u2", "D:1"], held_out=["D:2"])
    assert result.held_out == {"D:2": True}


def test_inconsistent_held_out_column(synthetic_basis_path):
    basis = ingest(synthetic_basis_path, 12)
    rhs = create_rhs(O="2", u2="2/3", D_1="13", D_2="14")
    with pytest.raises(InconsistentSystemError) as excinfo:
        solve_expansion(basis, rhs, columns=["O", "u2", "D:1"], held_out=["D:2"])
    assert excinfo.value.column == "D:2"
    with pytest.raises(InconsistentSystemError) as excinfo:
        solve_expansion(basis, rhs)
    assert excinfo.value.column == "D:2"


def test_solve_input_errors(synthetic_basis_path):
    basis = ingest(synthetic_basis_path, 12)
    rhs = create_rhs(O="2", u2="2/3", D_1="13")
    with pytest.raises(InputValidationError, match="rank"):
        solve_expansion(basis, rhs, columns=["O", "u2"])
    with pytest.raises(InputValidationError, match="no column"):
        solve_expansion(basis, rhs, columns=["O", "u2", "H"])
    with pytest.raises(InputValidationError):
        solve_expansion(basis, create_rhs(O="2", u2="2/3"), columns=["O", "u2", "D:1"])


def test_symbolic_right_hand_side(synthetic_basis_path):
    basis = ingest(synthetic_basis_path, 12)
    result = solve_expansion(basis, create_rhs(O="2", u2="2/3", D_1="d"))
    d = sympy.Symbol("d")
    assert result.coefficient("f1") == 2
    assert result.coefficient("f2") == sympy.Rational(-1, 3)
    assert sympy.simplify(result.coefficient("f3") - (d - 8)) == 0


coefficients = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@settings(max_examples=100)
@given(coefficients, coefficients, coefficients)
def test_exact_solve_recovers_chosen_coefficients(c1, c2, c3):
    basis = ingest(SYNTHETIC_BASIS, 12)
    chosen = [c1, c2, c3]
    values = {
        label: str(sum(entry.value * c for entry, c in zip(basis.column(label), chosen)))
        for label in basis.columns
    }
    result = solve_expansion(basis, CoefficientTable.from_strings(values))
    for form, c in zip(basis.forms, chosen):
        assert result.coefficient(form) == sympy.Rational(c.numerator, c.denominator)


# ============== Interval solve ==============

def test_interval_solve_encloses_solution(inexact_basis_path, synthetic_rhs_path):
    basis = ingest(inexact_basis_path, 12)
    assert not basis.is_exact()
    result = solve_expansion(basis, load_rhs(synthetic_rhs_path), held_out=["D:2"])
    assert not result.exact
    for form, value in EXPECTED.items():
        mid, radius = result.coefficients[form], result.radii[form]
        assert radius < mpmath.mpf("1e-9")
        assert abs(mid - mpmath.mpf(value.numerator) / value.denominator) <= radius + mpmath.mpf("1e-30")
    assert result.held_out == {"D:2": True}


def test_interval_solve_at_requested_precision(inexact_basis_path, synthetic_rhs_path):
    basis = ingest(inexact_basis_path, 12)
    rhs = load_rhs(synthetic_rhs_path)
    saved = mpmath.iv.dps
    result = solve_expansion(basis, rhs, held_out=["D:2"], precision=10)
    assert mpmath.iv.dps == saved
    for form, value in EXPECTED.items():
        mid, radius = result.coefficients[form], result.radii[form]
        assert abs(mid - mpmath.mpf(value.numerator) / value.denominator) <= radius + mpmath.mpf("1e-15")
    assert result.held_out == {"D:2": True}

    with pytest.raises(InputValidationError, match="precision"):
        solve_expansion(basis, rhs, precision=0)


def test_interval_solve_errors(write_table, inexact_basis_path):
    basis = ingest(write_table("label,O\nf1,0.0+-1\n"), 12)
    with pytest.raises(InputValidationError, match="contains zero"):
        solve_expansion(basis, create_rhs(O="1"))

    inexact = ingest(inexact_basis_path, 12)
    with pytest.raises(UnsupportedCaseError):
        solve_expansion(inexact, create_rhs(O="2", u2="2/3", D_1="d"))

    with pytest.raises(InconsistentSystemError):
        solve_expansion(inexact, create_rhs(O="2", u2="2/3", D_1="13", D_2="14"))
