"""
Named half-integral indices: the fixed labels of the catalog and the D:a family.
"""

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from algebra.jordan import HalfIntegralSym3
from config.index_catalog import index_catalog
from models.errors import InputValidationError


class NamedIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    matrix: HalfIntegralSym3
    parameter: Optional[int] = None

    @property
    def family(self) -> str:
        """'D' for D:a, otherwise the label itself"""
        return self.label.split(":")[0]


def parse_named_index(text: str) -> NamedIndex:
    """Resolve 'H', 'u2', 'D:3', ... against the catalog"""
    text = text.strip()
    if ":" in text:
        prefix, _, raw = text.partition(":")
        family = index_catalog.get_family(prefix)
        if family is None:
            raise InputValidationError(f"Unknown index family {prefix!r}; known labels: {', '.join(named_index_labels())}")
        try:
            a = int(raw)
        except ValueError:
            raise InputValidationError(f"Index parameter must be an integer, got {raw!r}")
        if a < family.get("min_parameter", 1):
            raise InputValidationError(f"{prefix}:a needs a >= {family.get('min_parameter', 1)}, got {a}")
        return NamedIndex(label=f"{prefix}:{a}", matrix=HalfIntegralSym3.diagonal(1, 1, a), parameter=a)

    rows = index_catalog.get_index_rows(text)
    if rows is None:
        raise InputValidationError(f"Unknown named index {text!r}; known labels: {', '.join(named_index_labels())}")
    return NamedIndex(label=text, matrix=HalfIntegralSym3.from_rows(rows))


def named_index_labels() -> List[str]:
    return index_catalog.get_fixed_labels() + ["D:a"]


def has_vanishing_shape(S: HalfIntegralSym3) -> bool:
    """Unit (1,1) and (2,2) entries with (1,2) entry 1/2"""
    return S.a == 1 and S.b == 1 and S.s12 == Fraction(1, 2)


__all__ = ["NamedIndex", "parse_named_index", "named_index_labels", "has_vanishing_shape"]
