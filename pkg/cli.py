"""
Command line interface.

Every subcommand writes JSON to stdout; logs go to stderr. Exit codes: 0 on
success, 2 on invalid input, 3 on an unsupported case.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

import mpmath
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from algebra.jordan import HalfIntegralSym3, det, parse_element
from coefficients.fourier import eisenstein_coeff, ikeda_coeff, rank_of
from config.index_catalog import index_catalog
from config.settings import settings
from lattice.counts import DIAG222_COLUMNS, table_diag222, table_diag222_direct, triple_histogram
from lattice.shells import shell_count
from models.errors import InputValidationError, UnsupportedCaseError
from models.payloads import (
    CoefficientPayload,
    CountPayload,
    ErrorPayload,
    RestrictionPayload,
    SeriesPayload,
    SolvePayload,
    format_number,
)
from qseries.eigenforms import eigenvalue_table
from qseries.series import SERIES
from restriction.named import named_index_labels, parse_named_index
from restriction.service import ROUTES, restrict_eisenstein, restrict_ikeda
from solver.basis_table import SCHEMA_HINT, ingest
from solver.linear import CoefficientTable, SolveResult, parse_rhs_value, solve_expansion

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else settings.LOG_LEVEL)


def _emit(payload: Any) -> None:
    if isinstance(payload, list):
        print(json.dumps([p.model_dump() for p in payload], indent=2))
    else:
        print(json.dumps(payload.model_dump(), indent=2))


# ============== Lattice counts ==============

def cmd_shells(args) -> List[CountPayload]:
    if not 1 <= args.max <= settings.MAX_IMAGINARY_NORM:
        raise InputValidationError(f"--max must lie in 1..{settings.MAX_IMAGINARY_NORM}, got {args.max}")
    kind = "full" if args.full else "imaginary"
    return [
        CountPayload(case=[n], count=str(shell_count(n, imaginary=not args.full)), kind=kind)
        for n in range(1, args.max + 1)
    ]


def cmd_triples(args) -> List[CountPayload]:
    n1, n2, n3 = args.norms
    histogram = triple_histogram(n1, n2, n3, args.jobs)
    traces = [args.t] if args.t is not None else sorted(histogram.counts)
    return [CountPayload(case=[n1, n2, n3, t], count=str(histogram.count(t))) for t in traces]


def cmd_census(args) -> List[CountPayload]:
    table = table_diag222_direct(args.jobs) if args.direct else table_diag222(args.jobs)
    return [
        CountPayload(case=list(column), count=str(table.get(column, 0)), kind="d(T)")
        for column in DIAG222_COLUMNS
    ]


# ============== Series and coefficients ==============

def cmd_qseries(args) -> SeriesPayload:
    series = SERIES[args.series](args.prec)
    return SeriesPayload(name=args.series, precision=series.precision, coefficients=series.as_strings())


def _coefficient_target(args):
    if args.element:
        return parse_element(args.element), "element"
    if args.diag:
        return HalfIntegralSym3.diagonal(*args.diag), "diag({},{},{})".format(*args.diag)
    if args.index:
        named = parse_named_index(args.index)
        return named.matrix, named.label
    raise InputValidationError("coeff needs one of --element, --diag or --index")


def cmd_coeff(args) -> CoefficientPayload:
    target, label = _coefficient_target(args)
    if args.form == "ikeda":
        element = target.to_jordan() if isinstance(target, HalfIntegralSym3) else target
        eigen = eigenvalue_table(args.weight - 8, max(int(det(element)), 2))
        value = ikeda_coeff(target, args.weight, eigen)
        return CoefficientPayload(
            form="ikeda", weight=args.weight, index=label, rank=3, value=format_number(value)
        )
    coefficient = eisenstein_coeff(target, args.weight)
    return CoefficientPayload(
        form="eisenstein", weight=args.weight, index=label, rank=rank_of(target),
        value=format_number(coefficient.value),
        constant=format_number(coefficient.constant),
        normalised=format_number(coefficient.normalised),
    )


# ============== Restriction ==============

def _restrict(form: str, label: str, weight: int, route: str, jobs: int):
    index = parse_named_index(label)
    if form == "ikeda":
        return restrict_ikeda(index, weight, route=route, jobs=jobs)
    return restrict_eisenstein(index, weight, route=route, jobs=jobs)


def cmd_restrict(args) -> RestrictionPayload:
    result = _restrict(args.form, args.index, args.weight, args.route, args.jobs)
    return RestrictionPayload(
        index=result.index,
        form=result.form,
        weight=result.weight,
        value=format_number(result.value),
        routes={name: format_number(v) for name, v in result.routes.items()},
        routes_agree=result.routes_agree,
    )


# ============== Solve ==============

def computed_rhs(form: str, weight: int, labels: List[str], symbolic: Dict[str, str], jobs: int) -> CoefficientTable:
    """Restricted coefficients for every label; labels listed in symbolic become unknowns"""
    values: Dict[str, Any] = {}
    for label in labels:
        if label in symbolic:
            values[label] = parse_rhs_value(symbolic[label])
            continue
        # G has no Eisenstein closed form
        route = "enum" if form == "eisenstein" and label == "G" else "closed"
        values[label] = _restrict(form, label, weight, route, jobs).value
    return CoefficientTable(values=values)


def load_rhs(path: Optional[str]) -> CoefficientTable:
    """Two-column CSV 'label,value'"""
    if not path:
        raise InputValidationError("--rhs-from file needs --rhs PATH (CSV with header 'label,value')")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, comment="#", skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InputValidationError(f"Cannot read rhs file {path}: {e}") from e
    if list(frame.columns) != ["label", "value"]:
        raise InputValidationError(f"rhs file needs the header 'label,value', got {list(frame.columns)}")
    return CoefficientTable.from_strings(dict(zip(frame["label"].str.strip(), frame["value"])))


def _format_solution(value, digits: int) -> str:
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, digits)
    return str(value)


def cmd_solve(args) -> SolvePayload:
    if not args.basis:
        raise InputValidationError(f"solve needs --basis PATH; {SCHEMA_HINT}")
    basis = ingest(args.basis, args.weight)
    system = index_catalog.get_system(args.form, args.weight) or {}
    columns = args.columns or [c for c in system.get("columns", []) if c in basis.columns] or None
    held_out = args.held_out or system.get("held_out", [])

    if args.rhs_from == "file":
        rhs = load_rhs(args.rhs)
    else:
        wanted = columns or basis.columns
        labels = list(dict.fromkeys(wanted + [c for c in held_out if c in basis.columns]))
        rhs = computed_rhs(args.form, args.weight, labels, system.get("symbolic", {}), args.jobs)

    result: SolveResult = solve_expansion(basis, rhs, columns, held_out, precision=args.prec)
    return SolvePayload(
        weight=args.weight,
        forms=result.forms,
        columns=result.columns,
        rank=basis.rank,
        exact=result.exact,
        coefficients={form: _format_solution(v, args.prec) for form, v in result.coefficients.items()},
        radii={form: _format_solution(v, args.prec) for form, v in result.radii.items()},
        residual=_format_solution(result.residual, args.prec),
        held_out=result.held_out,
    )


# ============== Parser ==============

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS, help="Worker processes for enumeration")
    common.add_argument("--prec", type=int, default=settings.DEFAULT_PRECISION, help="Series precision / interval digits")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(description="Restrictions of E7,3 modular forms to Sp6")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shells", parents=[common], help="Shell sizes of the integral octonions")
    p.add_argument("--max", type=int, default=3, help="Largest norm")
    p.add_argument("--full", action="store_true", help="Count the full order instead of the imaginary part")
    p.set_defaults(handler=cmd_shells)

    p = sub.add_parser("triples", parents=[common], help="Triple counts by tr((xz)y')")
    p.add_argument("norms", type=int, nargs=3, metavar=("N1", "N2", "N3"))
    p.add_argument("--t", type=int, default=None, help="Single trace value")
    p.set_defaults(handler=cmd_triples)

    p = sub.add_parser("census", aliases=["table1"], parents=[common], help="Census of pd T over diag(2,2,2) by d(T)")
    p.add_argument("--direct", action="store_true", help="Classify every norm triple by local_data")
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser("qseries", parents=[common], help="q-expansions")
    p.add_argument("--series", choices=sorted(SERIES), default="thetaE7")
    p.set_defaults(handler=cmd_qseries)

    p = sub.add_parser("coeff", parents=[common], help="Fourier coefficient at one index")
    p.add_argument("--form", choices=("ikeda", "eisenstein"), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--element", help='{"diag":[a,b,c],"x":[8 ints],"y":[...],"z":[...]} in doubled coordinates')
    p.add_argument("--diag", type=int, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--index", help=f"Named index: {', '.join(named_index_labels())}")
    p.set_defaults(handler=cmd_coeff)

    p = sub.add_parser("restrict", parents=[common], help="Restricted coefficient at a named index")
    p.add_argument("--form", choices=("ikeda", "eisenstein"), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--index", required=True, help=f"One of {', '.join(named_index_labels())}")
    p.add_argument("--route", choices=ROUTES, default="closed")
    p.set_defaults(handler=cmd_restrict)

    p = sub.add_parser("solve", parents=[common], help="Expansion of a restriction in a Siegel basis")
    p.add_argument("--form", choices=("ikeda", "eisenstein"), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--basis", help="Basis table CSV")
    p.add_argument("--rhs-from", choices=("computed", "file"), default="computed")
    p.add_argument("--rhs", help="rhs CSV with header 'label,value'")
    p.add_argument("--columns", nargs="+", help="Columns to solve over (default: catalog system)")
    p.add_argument("--held-out", nargs="+", help="Columns to verify (default: catalog system)")
    p.set_defaults(handler=cmd_solve)

    return parser


def _fail(error: Exception, code: int) -> int:
    logger.error(f"{type(error).__name__}: {error}")
    _emit(ErrorPayload(error=type(error).__name__, message=str(error), exit_code=code))
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        settings.validate()
        if args.prec < 1:
            raise InputValidationError(f"--prec must be >= 1, got {args.prec}")
        if args.jobs < 1:
            raise InputValidationError(f"--jobs must be >= 1, got {args.jobs}")
        _emit(args.handler(args))
        return EXIT_OK
    except UnsupportedCaseError as e:
        return _fail(e, EXIT_UNSUPPORTED)
    except (InputValidationError, ValidationError, ValueError) as e:
        return _fail(e, EXIT_INVALID)


__all__ = ["build_parser", "main", "computed_rhs", "load_rhs", "EXIT_OK", "EXIT_INVALID", "EXIT_UNSUPPORTED"]
