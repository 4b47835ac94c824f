"""
JSON payloads written to stdout by the CLI.

Numbers are always strings: integers in decimal, rationals as "num/den".
"""
from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field


def format_number(value: Union[int, Fraction]) -> str:
    """Decimal string for integers, 'num/den' for proper rationals"""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return str(int(value))


class CountPayload(BaseModel):
    """One lattice count: shells, triples and the diag(2,2,2) census"""
    case: List[int]
    count: str
    kind: Optional[str] = None  # "imaginary", "full", "d(T)"


class SeriesPayload(BaseModel):
    """Truncated q-expansion"""
    name: str
    precision: int
    coefficients: List[str]


class CoefficientPayload(BaseModel):
    """Fourier coefficient of a lift or Eisenstein series at one index"""
    form: str
    weight: int
    index: str
    rank: int
    value: str
    constant: Optional[str] = None
    normalised: Optional[str] = None


class RestrictionPayload(BaseModel):
    """Restricted coefficient at a named index"""
    index: str
    form: str
    weight: int
    value: str
    routes: Dict[str, str] = Field(default_factory=dict)
    routes_agree: Optional[bool] = None


class SolvePayload(BaseModel):
    """Expansion coefficients of a restriction in a Siegel basis"""
    weight: int
    forms: List[str]
    columns: List[str]
    rank: int
    exact: bool
    coefficients: Dict[str, str]
    radii: Dict[str, str] = Field(default_factory=dict)
    residual: str = "0"
    held_out: Dict[str, bool] = Field(default_factory=dict)

    class Config:
        json_schema_extra = {
            "example": {
                "weight": 12,
                "forms": ["f1", "f2", "f3", "f4"],
                "columns": ["O", "u2", "u6", "D:1"],
                "rank": 4,
                "exact": True,
                "coefficients": {"f1": "1", "f2": "0", "f3": "...", "f4": "..."},
                "residual": "0",
                "held_out": {"D:2": True, "W": True},
            }
        }


class ErrorPayload(BaseModel):
    """Failure written to stdout before a non-zero exit"""
    error: str
    message: str
    exit_code: int
