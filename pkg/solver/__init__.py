from .basis_table import BasisTable, Entry, ingest, parse_entry
from .linear import CoefficientTable, SolveResult, solve_expansion

__all__ = [
    "BasisTable",
    "Entry",
    "ingest",
    "parse_entry",
    "CoefficientTable",
    "SolveResult",
    "solve_expansion",
]
