#!/usr/bin/env python3
"""
Test suite for named indices, fiber enumeration and the restriction of the
Ikeda type lift and the Eisenstein series to Sp6
"""

from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from loguru import logger

from algebra.jordan import HalfIntegralSym3, JordanElement
from algebra.octonion import ALPHA, E, Octonion, bilinear_trace, multiply, norm
from coefficients.fourier import ikeda_coeff
from coefficients.local_polynomials import DiagonalProfile
from models.errors import InputValidationError, RestrictionToolError, UnsupportedCaseError
from qseries.arithmetic import eisenstein_constants
from qseries.eigenforms import eigenvalue_table
from restriction.closed_form import eisenstein_d_family, ikeda_d_family
from restriction.fiber import candidate_entries, enumerate_fiber, fiber_census
from restriction.named import has_vanishing_shape, named_index_labels, parse_named_index
from restriction.service import (
    classify_member,
    restrict_eisenstein,
    restrict_ikeda,
    restrict_ikeda_vanishing,
)

GENERIC_VANISHING = HalfIntegralSym3.from_rows([[1, "1/2", 0], ["1/2", 1, 1], [0, 1, 3]])
D1_AT_12 = Fraction(2 ** 7 * 3 ** 4 * 5 ** 3 * 7 * 13 ** 3, 691)
D1_AT_16 = Fraction(2 ** 9 * 3 ** 7 * 5 ** 2 * 7 ** 2 * 17 * 43, 691 * 3617)


def census_signature(census):
    return [(cls.norms, cls.trace, cls.count, cls.determinant) for cls in census.classes]


# ============== Named indices ==============

def test_parse_named_index():
    H = parse_named_index("H")
    assert H.matrix == HalfIntegralSym3.diagonal(2, 2, 2)
    assert H.family == "H"

    D3 = parse_named_index(" D:3 ")
    assert D3.label == "D:3"
    assert D3.parameter == 3
    assert D3.family == "D"
    assert D3.matrix == HalfIntegralSym3.diagonal(1, 1, 3)

    G = parse_named_index("G")
    assert G.matrix.rows() == ((1, Fraction(1, 2), 0), (Fraction(1, 2), 2, 0), (0, 0, 2))

    labels = named_index_labels()
    assert {"O", "u2", "u4", "u6", "W", "S1", "G", "H", "D:a"} <= set(labels)


def test_parse_named_index_errors():
    for bad in ("Q", "D:0", "D:x", "X:2"):
        with pytest.raises(InputValidationError) as excinfo:
            parse_named_index(bad)
        logger.info(f"✅ {bad!r} rejected: {excinfo.value}")
    with pytest.raises(InputValidationError, match="known labels"):
        parse_named_index("Q")


def test_vanishing_shape():
    assert has_vanishing_shape(parse_named_index("S1").matrix)
    assert has_vanishing_shape(parse_named_index("W").matrix)
    assert has_vanishing_shape(GENERIC_VANISHING)
    assert not has_vanishing_shape(parse_named_index("G").matrix)
    assert not has_vanishing_shape(parse_named_index("D:1").matrix)


# ============== Fibers ==============

def test_fiber_over_diag111():
    S = HalfIntegralSym3.diagonal(1, 1, 1)
    assert fiber_census(S).total() == 1
    psd = fiber_census(S, pd_only=False)
    # zero entries, one unit entry (det 0), three unit entries with trace 2 (det 0)
    assert psd.total() == 7939
    assert sorted(cls.count for cls in psd.classes) == [1, 126, 126, 126, 7560]


def test_fiber_over_d2():
    census = fiber_census(parse_named_index("D:2").matrix)
    assert census.total() == 253
    for cls in census.classes:
        assert cls.determinant == 2 - cls.norms[1] - cls.norms[2]


def test_empty_fibers():
    assert fiber_census(parse_named_index("S1").matrix).total() == 0
    assert fiber_census(parse_named_index("W").matrix).total() == 0
    assert fiber_census(GENERIC_VANISHING).total() == 0
    assert restrict_ikeda_vanishing(GENERIC_VANISHING) == 0


def test_fiber_rejects_non_pd_base():
    with pytest.raises(InputValidationError):
        fiber_census(parse_named_index("u2").matrix)
    with pytest.raises(InputValidationError):
        enumerate_fiber(parse_named_index("u6").matrix)
    with pytest.raises(InputValidationError):
        candidate_entries(HalfIntegralSym3.diagonal(1, 1, 1), bound_scale=0)


def test_widened_bound_finds_nothing_new():
    for label in ("D:1", "D:2"):
        S = parse_named_index(label).matrix
        narrow = fiber_census(S)
        wide = fiber_census(S, bound_scale=2)
        assert census_signature(narrow) == census_signature(wide), label
    S = HalfIntegralSym3.diagonal(1, 1, 1)
    assert fiber_census(S, pd_only=False, bound_scale=2).total() == 7939


def test_widening_recovers_entries_cut_by_a_tight_bound(monkeypatch):
    """A candidate bound one below the minors loses members; bound_scale=2 brings them back"""
    S = parse_named_index("D:2").matrix
    expected = census_signature(fiber_census(S, jobs=1))
    assert fiber_census(S, jobs=1).total() == 253

    def tight_bound(matrix, i, j):
        diagonal = matrix.diagonal_entries()
        return max(diagonal[i] * diagonal[j] - 1, 1)

    monkeypatch.setattr("restriction.fiber._minor_bound", tight_bound)
    narrow = [len(rows) for rows in candidate_entries(S)]
    wide = [len(rows) for rows in candidate_entries(S, bound_scale=2)]
    assert all(w > n for n, w in zip(narrow, wide))
    assert fiber_census(S, jobs=1).total() == 1
    assert census_signature(fiber_census(S, bound_scale=2, jobs=1)) == expected


@pytest.mark.slow
def test_widened_bound_over_g():
    S = parse_named_index("G").matrix
    assert census_signature(fiber_census(S)) == census_signature(fiber_census(S, bound_scale=2))


def test_fiber_census_is_independent_of_jobs():
    S = parse_named_index("G").matrix
    assert census_signature(fiber_census(S, jobs=1)) == census_signature(fiber_census(S, jobs=3))


def test_coefficients_are_uniform_on_classes():
    """Every member of a (norms, trace) class has the representative's coefficient"""
    eigen = eigenvalue_table(12, 4)
    for label in ("D:2", "G"):
        S = parse_named_index(label).matrix
        census = fiber_census(S)
        expected = {
            (cls.norms, cls.trace): (cls.count, ikeda_coeff(classify_member(cls.representative), 20, eigen))
            for cls in census.classes
        }
        seen = defaultdict(int)
        for T in enumerate_fiber(S):
            norms = (int(norm(T.x)), int(norm(T.y)), int(norm(T.z)))
            key = (norms, int(bilinear_trace(multiply(T.x, T.z), T.y)))
            assert ikeda_coeff(classify_member(T), 20, eigen) == expected[key][1], (label, key)
            seen[key] += 1
        assert {k: v[0] for k, v in expected.items()} == dict(seen), label


def test_classify_member():
    unit_pivot = JordanElement.raw(1, 1, 5, Octonion.zero(), E[1], E[2])
    assert classify_member(unit_pivot) == HalfIntegralSym3.diagonal(1, 1, 3)

    over_h = JordanElement.raw(2, 2, 2, E[1] + E[2], Octonion.zero(), Octonion.zero())
    profile = classify_member(over_h)
    assert isinstance(profile, DiagonalProfile)
    assert profile.diagonal == (1, 2, 2)

    with pytest.raises(UnsupportedCaseError):
        classify_member(JordanElement.raw(2, 3, 3, ALPHA[4], Octonion.zero(), Octonion.zero()))


@given(
    st.integers(min_value=1, max_value=4),
    st.sampled_from([Fraction(-1, 2), Fraction(0), Fraction(1, 2)]),
    st.sampled_from([Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]),
)
def test_vanishing_shape_has_empty_pd_fiber(c, s13, s23):
    S = HalfIntegralSym3(a=1, b=1, c=c, s12=Fraction(1, 2), s13=s13, s23=s23)
    assume(S.is_pd())
    assert fiber_census(S).total() == 0
    assert restrict_ikeda_vanishing(S) == 0


# ============== Ikeda type lift ==============

@pytest.mark.parametrize("label,expected", [
    ("D:1", 1),
    ("D:2", 228),
    ("D:3", 11592),
    ("G", 9744),
    ("S1", 0),
    ("W", 0),
])
def test_ikeda_weight_20(label, expected):
    result = restrict_ikeda(parse_named_index(label), 20, route="both")
    assert result.value == expected
    assert result.routes == {"closed": expected, "enum": expected}
    assert result.routes_agree is True


def test_ikeda_d_family_formula():
    eigen = eigenvalue_table(12, 4)
    assert ikeda_d_family(1, eigen) == 1
    assert ikeda_d_family(2, eigen) == -24 + 252


def test_ikeda_non_pd_index():
    u2 = parse_named_index("u2")
    result = restrict_ikeda(u2, 20)
    assert result.value == 0
    assert result.routes_agree is None
    with pytest.raises(UnsupportedCaseError):
        restrict_ikeda(u2, 20, route="enum")


def test_ikeda_errors():
    D1 = parse_named_index("D:1")
    with pytest.raises(InputValidationError):
        restrict_ikeda(D1, 20, route="fast")
    with pytest.raises(RestrictionToolError):
        restrict_ikeda(D1, 18)
    with pytest.raises(InputValidationError):
        restrict_ikeda(D1, 20, eigen=eigenvalue_table(16, 2))
    with pytest.raises(InputValidationError):
        restrict_ikeda_vanishing(parse_named_index("G").matrix)


@pytest.mark.slow
def test_ikeda_at_h():
    logger.info("🔍 Ikeda restriction at H, both routes...")
    result = restrict_ikeda(parse_named_index("H"), 20, route="both", jobs=2)
    assert result.value == 18124416
    assert result.routes_agree is True


# ============== Eisenstein series ==============

def test_eisenstein_anchors():
    assert restrict_eisenstein(parse_named_index("u2"), 16).value == Fraction(16320, 3617)
    assert restrict_eisenstein(parse_named_index("D:1"), 12).value == D1_AT_12
    assert restrict_eisenstein(parse_named_index("D:1"), 14).value == -979776
    assert restrict_eisenstein(parse_named_index("D:1"), 16).value == D1_AT_16
    assert restrict_eisenstein(parse_named_index("O"), 12).value == 1


def test_eisenstein_low_rank_closed_forms():
    c = eisenstein_constants(12)
    assert restrict_eisenstein(parse_named_index("u4"), 12).value == c.rank2 + 126 * c.rank1
    assert restrict_eisenstein(parse_named_index("u6"), 12).value == 56 * c.rank1
    assert restrict_eisenstein(parse_named_index("W"), 12).value == 56 * c.rank2 + 4032 * c.rank1
    assert restrict_eisenstein(parse_named_index("S1"), 12).value == 1512 * c.rank1
    assert eisenstein_d_family(1, 12) == c.rank3 + 378 * c.rank2 + 7560 * c.rank1


@pytest.mark.parametrize("label", ["D:1", "W", "S1"])
def test_eisenstein_routes_agree(label):
    for weight in (12, 16):
        result = restrict_eisenstein(parse_named_index(label), weight, route="both")
        assert result.routes_agree is True, (label, weight, result.routes)


@pytest.mark.slow
def test_eisenstein_routes_agree_d2():
    result = restrict_eisenstein(parse_named_index("D:2"), 12, route="both", jobs=2)
    assert result.routes_agree is True


@pytest.mark.slow
def test_eisenstein_at_g_by_enumeration():
    G = parse_named_index("G")
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(G, 12)
    result = restrict_eisenstein(G, 12, route="enum", jobs=2)
    assert isinstance(result.value, Fraction)
    assert result.routes_agree is None


def test_eisenstein_unsupported_cases():
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(parse_named_index("H"), 12)
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(parse_named_index("H"), 12, route="enum")
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(parse_named_index("D:1"), 11)
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(parse_named_index("u2"), 12, route="enum")
    with pytest.raises(UnsupportedCaseError):
        restrict_eisenstein(parse_named_index("G"), 12, route="closed")
