#!/usr/bin/env python3
"""
Test suite for the exceptional Jordan algebra: cross product, determinant,
positivity, splitting, local data and pivot reduction
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from loguru import logger
from pydantic import ValidationError

from algebra.jordan import (
    HalfIntegralSym3,
    JordanElement,
    cross,
    det,
    element_content,
    is_pd,
    is_psd,
    jordan_rank,
    local_data,
    parse_element,
    pivot_reduce,
    serialize_element,
    split,
    trace_pairing,
)
from algebra.octonion import ALPHA, E, Octonion, bilinear_trace, conj, multiply, norm
from models.errors import InputValidationError, UnsupportedCaseError

from conftest import integral_octonions


def create_element(a, b, c, x=None, y=None, z=None) -> JordanElement:
    """Jordan element with zero default off-diagonal entries"""
    zero = Octonion.zero()
    return JordanElement.raw(a, b, c, x or zero, y or zero, z or zero)


def half_unit() -> Octonion:
    """(e0 + e1 + e4 - e5) / 2: norm 1, real part 1/2"""
    return -ALPHA[5]


def test_cross_of_diagonal():
    assert cross(JordanElement.diagonal(2, 2, 2)) == JordanElement.diagonal(4, 4, 4)
    assert cross(JordanElement.diagonal(1, 0, 0)).is_zero()


def test_determinant_examples():
    assert det(JordanElement.diagonal(3, 5, 7)) == 105
    T = create_element(1, 1, 5, y=E[1], z=ALPHA[4])
    assert det(T) == 5 - norm(E[1]) - norm(ALPHA[4])

    x, y, z = E[1], E[4], E[2]
    imaginary_only = create_element(0, 0, 0, x, y, z)
    assert det(imaginary_only) == bilinear_trace(multiply(x, z), y) == 2


def test_positivity():
    assert is_pd(JordanElement.diagonal(2, 2, 2))
    assert is_psd(JordanElement.diagonal(1, 1, 0))
    assert not is_pd(JordanElement.diagonal(1, 1, 0))
    assert not is_psd(JordanElement.diagonal(1, -1, 1))
    # positive minors, zero determinant: y = -(xz) gives tr((xz)y') = -2
    edge = create_element(2, 2, 2, x=E[1], y=-E[4], z=E[2])
    assert det(edge) == 0
    assert is_psd(edge) and not is_pd(edge)


def test_split():
    T1, T2 = split(JordanElement.diagonal(2, 2, 2))
    assert T1 == HalfIntegralSym3.diagonal(2, 2, 2)
    assert T2.is_zero()

    h = half_unit()
    T1, T2 = split(create_element(1, 2, 2, x=h, z=E[3]))
    assert T1.s12 == Fraction(1, 2)
    assert T1.diagonal_entries() == (1, 2, 2)
    assert T2.x == h.imaginary_part()
    assert T2.z == E[3]
    assert T2.diagonal_entries() == (0, 0, 0)

    imaginary_only = create_element(0, 0, 0, E[1], E[2], E[3])
    T1, T2 = split(imaginary_only)
    assert T1 == HalfIntegralSym3.diagonal(0, 0, 0)
    assert T2 == imaginary_only


def test_trace_pairing():
    assert trace_pairing(JordanElement.diagonal(1, 1, 1), JordanElement.diagonal(3, 4, 5)) == 12
    imaginary_only = create_element(0, 0, 0, E[1], E[2], ALPHA[4])
    S = HalfIntegralSym3.from_rows([[1, "1/2", "1/2"], ["1/2", 1, "1/2"], ["1/2", "1/2", 1]])
    assert trace_pairing(imaginary_only, S.to_jordan()) == 0


def test_local_data_cases():
    """d(T) for the three shapes of positive definite T over diag(2,2,2)"""
    logger.info("🔍 Checking d(T) examples...")
    assert local_data(JordanElement.diagonal(2, 2, 2)).triple() == (2, 4, 8)

    norm_two = E[1] + E[2]
    assert local_data(create_element(2, 2, 2, x=norm_two)).triple() == (1, 2, 4)

    # tr((xz)y') = 1 for x = e1, z = e2, y = alpha_4
    T = create_element(2, 2, 2, x=E[1], y=ALPHA[4], z=E[2])
    assert det(T) == 3
    data = local_data(T)
    assert data.triple() == (1, 1, 3)
    assert data.tau == {3: (0, 0, 1)}


def test_local_data_rejects_non_integral_and_negative():
    with pytest.raises(InputValidationError):
        local_data(JordanElement.diagonal(Fraction(1, 2), 1, 1))
    with pytest.raises(InputValidationError):
        local_data(JordanElement.diagonal(1, 1, -1))


def test_content():
    assert element_content(JordanElement.diagonal(2, 4, 6)) == 2
    assert element_content(create_element(2, 2, 2, x=2 * ALPHA[4])) == 2
    assert element_content(create_element(2, 2, 2, x=E[1])) == 1


def test_rank():
    assert jordan_rank(JordanElement.diagonal(0, 0, 0)) == 0
    assert jordan_rank(JordanElement.diagonal(1, 0, 0)) == 1
    assert jordan_rank(JordanElement.diagonal(1, 1, 0)) == 2
    u6 = HalfIntegralSym3.from_rows([[1, "1/2", 0], ["1/2", 1, 0], [0, 0, 0]])
    assert jordan_rank(u6.to_jordan()) == 2
    assert jordan_rank(JordanElement.diagonal(2, 2, 2)) == 3


def test_pivot_reduce_unit_corner():
    T = create_element(1, 1, 5, y=E[1], z=E[2])
    assert pivot_reduce(T) == HalfIntegralSym3.diagonal(1, 1, 3)


def test_pivot_reduce_forced_product():
    """N(x) = 1 and z = x'y leave diag(1, a - N(y), 0)"""
    x, y = E[1], E[2]
    T = create_element(1, 1, 4, x=x, y=y, z=multiply(conj(x), y))
    assert det(T) == 0
    assert pivot_reduce(T) == HalfIntegralSym3.diagonal(1, 3, 0)


def test_pivot_reduce_half_unit_corner():
    h = half_unit()
    T = create_element(1, 2, 2, x=h, z=E[1])
    # 2 - N(y) - N(z - (1/2 + x')y) with y = 0
    assert pivot_reduce(T) == HalfIntegralSym3.diagonal(1, 1, 1)

    y = E[2]
    T = create_element(1, 2, 2, x=h, y=y, z=multiply(conj(h), y))
    assert pivot_reduce(T) == HalfIntegralSym3.diagonal(1, 1, 1)


def test_pivot_reduce_errors():
    with pytest.raises(UnsupportedCaseError):
        pivot_reduce(JordanElement.diagonal(2, 2, 2))
    with pytest.raises(InputValidationError):
        pivot_reduce(JordanElement.diagonal(1, 1, -1))


def test_half_integral_sym3_validation():
    with pytest.raises(ValidationError):
        HalfIntegralSym3(a=1, b=1, c=1, s12=Fraction(1, 3))
    with pytest.raises(InputValidationError):
        HalfIntegralSym3.from_rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(InputValidationError):
        HalfIntegralSym3.from_rows([["1/2", 0, 0], [0, 1, 0], [0, 0, 1]])

    G = HalfIntegralSym3.from_rows([[1, "1/2", 0], ["1/2", 2, 0], [0, 0, 2]])
    assert G.det() == Fraction(7, 2)
    assert G.is_pd()
    assert det(G.to_jordan()) == G.det()


def test_serialization():
    T = create_element(2, 2, 2, x=E[1], y=ALPHA[4], z=E[2])
    text = serialize_element(T)
    assert '"diag":[2,2,2]' in text
    assert parse_element(text) == T

    with pytest.raises(InputValidationError) as excinfo:
        parse_element('{"diag":[1,1]}')
    assert "doubled coordinates" in str(excinfo.value)
    with pytest.raises(InputValidationError):
        parse_element('{"diag":[1,1,1],"x":[1,2]}')
    with pytest.raises(InputValidationError):
        parse_element("not json")


diagonals = st.integers(min_value=-3, max_value=3)


@given(diagonals, diagonals, diagonals, integral_octonions, integral_octonions, integral_octonions)
def test_adjugate_identities(a, b, c, x, y, z):
    """det(T x T) = det(T)^2 and (T x T) x (T x T) = det(T) T"""
    T = create_element(a, b, c, x, y, z)
    adjugate = cross(T)
    assert det(adjugate) == det(T) ** 2
    twice = cross(adjugate)
    d = det(T)
    assert twice.diagonal_entries() == tuple(d * v for v in T.diagonal_entries())
    assert (twice.x, twice.y, twice.z) == (d * T.x, d * T.y, d * T.z)
