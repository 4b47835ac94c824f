"""
Restriction of Ikeda type lifts and Eisenstein series to Sp6.

A(S) = sum over integral T with T1 = S of A_F(T). Two routes are offered: the
closed forms in restriction.closed_form and a direct sum over the fiber census.
"""

from fractions import Fraction
from typing import Callable, Dict, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from algebra.jordan import HalfIntegralSym3, JordanElement, local_data, pivot_reduce
from coefficients.fourier import check_lift_weight, eisenstein_coeff, ikeda_coeff
from coefficients.local_polynomials import DiagonalProfile
from models.errors import InputValidationError, UnsupportedCaseError
from qseries.eigenforms import EigenvalueTable, eigenvalue_table

from .closed_form import eisenstein_closed_form, ikeda_closed_form
from .fiber import fiber_census
from .named import NamedIndex, has_vanishing_shape

Route = Literal["closed", "enum", "both"]
ROUTES = ("closed", "enum", "both")


class RestrictionResult(BaseModel):
    """Restricted coefficient at a named index, with the value of every route that ran"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: str
    form: str
    weight: int
    value: Fraction
    routes: Dict[str, Fraction] = Field(default_factory=dict)

    @property
    def routes_agree(self) -> Optional[bool]:
        if len(self.routes) < 2:
            return None
        return len(set(self.routes.values())) == 1


def classify_member(T: JordanElement) -> Union[HalfIntegralSym3, DiagonalProfile]:
    """
    Diagonal form of a fiber member: pivot_reduce when a unit pivot exists,
    otherwise the d(T) profile for members over diag(2, 2, 2).
    """
    try:
        return pivot_reduce(T)
    except UnsupportedCaseError:
        if T.diagonal_entries() != (2, 2, 2):
            raise
    return DiagonalProfile.from_local_data(local_data(T))


def _check_route(route: str) -> None:
    if route not in ROUTES:
        raise InputValidationError(f"route must be one of {ROUTES}, got {route!r}")


def _require_enumerable(index: NamedIndex) -> None:
    if not index.matrix.is_pd():
        raise UnsupportedCaseError(
            f"The enumeration route needs a positive definite index; {index.label} is not"
        )


def _run_routes(
    index: NamedIndex,
    form: str,
    weight: int,
    route: str,
    closed: Callable[[], Fraction],
    enum: Callable[[], Fraction],
) -> RestrictionResult:
    _check_route(route)
    routes: Dict[str, Fraction] = {}
    if route in ("closed", "both"):
        routes["closed"] = Fraction(closed())
    if route in ("enum", "both"):
        routes["enum"] = Fraction(enum())

    value = routes.get("closed", routes.get("enum"))
    result = RestrictionResult(index=index.label, form=form, weight=weight, value=value, routes=routes)
    if result.routes_agree is False:
        logger.error(f"Routes disagree for {form} weight {weight} at {index.label}: {routes}")
    else:
        logger.info(f"✅ {form} weight {weight} at {index.label}: {value}")
    return result


# ============== Ikeda type lift ==============

def default_eigen(weight: int, S: HalfIntegralSym3) -> EigenvalueTable:
    """Hecke table of the weight 2k - 8 eigenform, long enough for every det(T) <= abc"""
    return eigenvalue_table(weight - 8, max(S.a * S.b * S.c, 2))


def ikeda_by_enumeration(
    S: HalfIntegralSym3, weight: int, eigen: EigenvalueTable, jobs: Optional[int] = None
) -> int:
    census = fiber_census(S, pd_only=True, jobs=jobs)
    return sum(
        cls.count * ikeda_coeff(classify_member(cls.representative), weight, eigen)
        for cls in census.classes
    )


def restrict_ikeda(
    index: NamedIndex,
    weight: int,
    eigen: Optional[EigenvalueTable] = None,
    route: Route = "closed",
    jobs: Optional[int] = None,
) -> RestrictionResult:
    eigen = eigen or default_eigen(weight, index.matrix)
    check_lift_weight(weight, eigen)

    def enum() -> int:
        _require_enumerable(index)
        return ikeda_by_enumeration(index.matrix, weight, eigen, jobs)

    return _run_routes(
        index, "ikeda", weight, route,
        closed=lambda: ikeda_closed_form(index, weight, eigen, jobs),
        enum=enum,
    )


def restrict_ikeda_vanishing(S: HalfIntegralSym3, confirm: bool = True, jobs: Optional[int] = None) -> int:
    """
    0 for every S with unit (1,1), (2,2) entries and (1,2) entry 1/2. With
    confirm, the pd fiber is enumerated and must be empty.
    """
    if not has_vanishing_shape(S):
        raise InputValidationError(f"{S.label()} does not have a unit corner pair with (1,2) entry 1/2")
    if confirm and S.is_pd():
        census = fiber_census(S, pd_only=True, jobs=jobs)
        if census.total():
            logger.error(f"Vanishing-shaped index {S.label()} has {census.total()} pd fiber members")
            raise ArithmeticError(f"Positive definite fiber over {S.label()} is not empty")
    return 0


# ============== Eisenstein series ==============

def _check_eisenstein_weight(weight: int) -> None:
    if weight < 12 or weight % 2:
        raise UnsupportedCaseError(f"Eisenstein restrictions need an even weight >= 12, got {weight}")


def eisenstein_by_enumeration(S: HalfIntegralSym3, weight: int, jobs: Optional[int] = None) -> Fraction:
    census = fiber_census(S, pd_only=False, jobs=jobs)
    total = Fraction(0)
    for cls in census.classes:
        total += cls.count * eisenstein_coeff(classify_member(cls.representative), weight).normalised
    return total


def restrict_eisenstein(
    index: NamedIndex,
    weight: int,
    route: Route = "closed",
    jobs: Optional[int] = None,
) -> RestrictionResult:
    _check_eisenstein_weight(weight)
    if index.label == "H":
        raise UnsupportedCaseError("The Eisenstein restriction at H is not available on any route")

    def enum() -> Fraction:
        _require_enumerable(index)
        return eisenstein_by_enumeration(index.matrix, weight, jobs)

    return _run_routes(
        index, "eisenstein", weight, route,
        closed=lambda: eisenstein_closed_form(index, weight),
        enum=enum,
    )


__all__ = [
    "ROUTES",
    "RestrictionResult",
    "classify_member",
    "default_eigen",
    "ikeda_by_enumeration",
    "restrict_ikeda",
    "restrict_ikeda_vanishing",
    "eisenstein_by_enumeration",
    "restrict_eisenstein",
]
