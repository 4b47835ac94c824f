"""
Fibers of the map T -> T1 over a half-integral index S.

Every integral T with T1 = S has off-diagonal entries in the order with a fixed
real part (the (i, j) entry has doubled real coordinate 2 s_ij). Positivity
bounds each entry by its 2x2 minor, so a fiber is a finite product of candidate
sets cut down by the determinant:

    det T = abc - a N(z) - b N(y) - c N(x) + tr((xz)y')

The census groups members by (N(x), N(y), N(z), tr((xz)y')); all members of a
class share their determinant and, on the indices used here, their coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from algebra.jordan import HalfIntegralSym3, JordanElement, det, is_pd, is_psd
from algebra.octonion import Octonion, batch_norm_times_four, left_multiplication_matrix
from config.settings import settings
from lattice.shells import lattice_points
from lattice.workers import partition, run_partitioned
from models.errors import InputValidationError

ClassKey = Tuple[int, int, int, int]
Witness = Tuple[int, int, int]


# ============== Candidate entries ==============

def _minor_bound(S: HalfIntegralSym3, i: int, j: int) -> int:
    diagonal = S.diagonal_entries()
    return diagonal[i] * diagonal[j]


def _admissible(norm_value: int, bound: int, pd_only: bool) -> bool:
    return norm_value < bound if pd_only else norm_value <= bound


@lru_cache(maxsize=32)
def _candidate_rows(dc0: int, max_norm: int) -> Tuple[np.ndarray, np.ndarray]:
    """Order elements with doubled real part dc0 and N <= max_norm, and their norms"""
    rows = lattice_points(4 * max_norm, dc0=dc0)
    norms = batch_norm_times_four(rows) // 4
    rows.flags.writeable = False
    norms.flags.writeable = False
    return rows, norms


def candidate_entries(S: HalfIntegralSym3, pd_only: bool = True, bound_scale: int = 1) -> Tuple[np.ndarray, ...]:
    """
    Candidate rows for the (1,2), (1,3), (2,3) entries of T over S.

    bound_scale > 1 widens the coordinate search past the minor bound; the
    extra candidates are rejected later by the explicit minor checks.
    """
    if bound_scale < 1:
        raise InputValidationError(f"bound_scale must be >= 1, got {bound_scale}")
    out = []
    for (i, j), s in zip(((0, 1), (0, 2), (1, 2)), S.off_diagonal()):
        bound = _minor_bound(S, i, j) * bound_scale
        max_norm = bound - 1 if pd_only and bound_scale == 1 else bound
        rows, _ = _candidate_rows(int(2 * s), max_norm)
        out.append(rows)
    return tuple(out)


def _grouped(rows: np.ndarray) -> List[Tuple[int, np.ndarray]]:
    """(norm, indices) blocks in increasing norm; indices keep row order"""
    norms = batch_norm_times_four(rows) // 4
    return [(int(n), np.flatnonzero(norms == n)) for n in np.unique(norms)]


# ============== Block scan ==============

class _Block(BaseModel):
    """Members sharing x and the norms of y and z, with their traces"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    ix: int
    norms: Tuple[int, int, int]
    base: int
    y_index: np.ndarray
    z_index: np.ndarray
    traces: Optional[np.ndarray] = None  # shape (len(z_index), len(y_index)); None means all zero


def _principal_minors(S: HalfIntegralSym3) -> Tuple[int, int, int]:
    """ab, ac, bc: the 2x2 principal minors of T are these minus N(x), N(y), N(z)"""
    a, b, c = S.diagonal_entries()
    return a * b, a * c, b * c


def _scan(S: HalfIntegralSym3, pd_only: bool, bound_scale: int, start: int, stop: int) -> Iterator[_Block]:
    X, Y, Z = candidate_entries(S, pd_only, bound_scale)
    a, b, c = S.diagonal_entries()
    # rows past the minor bound (bound_scale > 1) fail these checks
    minors = _principal_minors(S)
    x_norms = batch_norm_times_four(X) // 4
    y_groups = [(n, idx) for n, idx in _grouped(Y) if _admissible(n, minors[1], pd_only)]
    z_groups = [(n, idx) for n, idx in _grouped(Z) if _admissible(n, minors[2], pd_only)]
    Yf = Y.astype(np.float64)
    Zf = Z.astype(np.float64)

    for ix in range(start, stop):
        nx = int(x_norms[ix])
        if not _admissible(nx, minors[0], pd_only):
            continue
        L = None
        for ny, y_index in y_groups:
            for nz, z_index in z_groups:
                base = a * b * c - a * nz - b * ny - c * nx
                tmax = isqrt(4 * nx * ny * nz)
                if base + tmax < (1 if pd_only else 0):
                    continue
                if nx * ny * nz == 0:
                    yield _Block(ix=ix, norms=(nx, ny, nz), base=base, y_index=y_index, z_index=z_index)
                    continue
                if L is None:
                    L = left_multiplication_matrix(X[ix]).astype(np.float64)
                fourfold = np.rint((Zf[z_index] @ L) @ Yf[y_index].T).astype(np.int64)
                if np.any(fourfold & 3):
                    raise ArithmeticError(f"Non-integral trace form at x index {ix}")
                yield _Block(
                    ix=ix, norms=(nx, ny, nz), base=base,
                    y_index=y_index, z_index=z_index, traces=fourfold >> 2,
                )


def _census_chunk(task) -> Dict[ClassKey, Tuple[int, Witness]]:
    S, pd_only, bound_scale, start, stop = task
    threshold = 1 if pd_only else 0
    out: Dict[ClassKey, Tuple[int, Witness]] = {}
    for block in _scan(S, pd_only, bound_scale, start, stop):
        nx, ny, nz = block.norms
        if block.traces is None:
            if block.base < threshold:
                continue
            key = (nx, ny, nz, 0)
            count = len(block.y_index) * len(block.z_index)
            witness = (block.ix, int(block.y_index[0]), int(block.z_index[0]))
            previous = out.get(key)
            out[key] = (previous[0] + count, previous[1]) if previous else (count, witness)
            continue

        traces = block.traces
        for t in np.unique(traces):
            t = int(t)
            if block.base + t < threshold:
                continue
            hits = traces == t
            key = (nx, ny, nz, t)
            count = int(np.count_nonzero(hits))
            previous = out.get(key)
            if previous:
                out[key] = (previous[0] + count, previous[1])
            else:
                iz, iy = divmod(int(np.flatnonzero(hits.ravel())[0]), traces.shape[1])
                out[key] = (count, (block.ix, int(block.y_index[iy]), int(block.z_index[iz])))
    return out


# ============== Results ==============

class FiberClass(BaseModel):
    """Members with norms (N(x), N(y), N(z)) and trace t"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    norms: Tuple[int, int, int]
    trace: int
    count: int
    determinant: int
    representative: JordanElement


class FiberCensus(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    base: HalfIntegralSym3
    pd_only: bool
    classes: List[FiberClass]

    def total(self) -> int:
        return sum(cls.count for cls in self.classes)


def _require_pd(S: HalfIntegralSym3) -> None:
    if not S.is_pd():
        raise InputValidationError(
            f"Fiber enumeration needs a positive definite base, got {S.label()}"
        )


def _member(S: HalfIntegralSym3, rows: Tuple[np.ndarray, ...], witness: Witness) -> JordanElement:
    X, Y, Z = rows
    ix, iy, iz = witness
    return JordanElement.raw(
        S.a, S.b, S.c,
        Octonion.raw(int(v) for v in X[ix]),
        Octonion.raw(int(v) for v in Y[iy]),
        Octonion.raw(int(v) for v in Z[iz]),
    )


def fiber_census(
    S: HalfIntegralSym3,
    pd_only: bool = True,
    jobs: Optional[int] = None,
    bound_scale: int = 1,
) -> FiberCensus:
    """Members of the fiber over S grouped into (norms, trace) classes with a representative each"""
    _require_pd(S)
    jobs = jobs or settings.DEFAULT_JOBS
    rows = candidate_entries(S, pd_only, bound_scale)
    tasks = [(S, pd_only, bound_scale, start, stop) for start, stop in partition(len(rows[0]), jobs)]
    logger.debug(
        f"Fiber census over {S.label()}: candidates {tuple(len(r) for r in rows)}, {len(tasks)} chunks"
    )

    merged: Dict[ClassKey, Tuple[int, Witness]] = {}
    for chunk in run_partitioned(_census_chunk, tasks, jobs):
        for key, (count, witness) in chunk.items():
            previous = merged.get(key)
            merged[key] = (previous[0] + count, previous[1]) if previous else (count, witness)

    check = is_pd if pd_only else is_psd
    classes = []
    for key in sorted(merged):
        count, witness = merged[key]
        representative = _member(S, rows, witness)
        determinant = det(representative)
        if not check(representative) or determinant != S.a * S.b * S.c - S.a * key[2] - S.b * key[1] - S.c * key[0] + key[3]:
            logger.error(f"Fiber class {key} over {S.label()} has an inconsistent representative")
            raise ArithmeticError(f"Fiber class {key} failed its positivity re-check")
        classes.append(FiberClass(
            norms=key[:3], trace=key[3], count=count,
            determinant=int(determinant), representative=representative,
        ))

    census = FiberCensus(base=S, pd_only=pd_only, classes=classes)
    logger.info(f"Fiber over {S.label()} ({'pd' if pd_only else 'psd'}): {census.total()} members in {len(classes)} classes")
    return census


class FiberEnumeration(BaseModel):
    """Lazy stream of every member of the fiber over S"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    base: HalfIntegralSym3
    pd_only: bool = True
    bound_scale: int = 1

    def __iter__(self) -> Iterator[JordanElement]:
        S = self.base
        rows = candidate_entries(S, self.pd_only, self.bound_scale)
        threshold = 1 if self.pd_only else 0
        for block in _scan(S, self.pd_only, self.bound_scale, 0, len(rows[0])):
            if block.traces is None:
                if block.base < threshold:
                    continue
                for iz in block.z_index:
                    for iy in block.y_index:
                        yield _member(S, rows, (block.ix, int(iy), int(iz)))
                continue
            for iz, iy in zip(*np.nonzero(block.base + block.traces >= threshold)):
                yield _member(S, rows, (block.ix, int(block.y_index[iy]), int(block.z_index[iz])))


def enumerate_fiber(S: HalfIntegralSym3, pd_only: bool = True, bound_scale: int = 1) -> FiberEnumeration:
    _require_pd(S)
    return FiberEnumeration(base=S, pd_only=pd_only, bound_scale=bound_scale)


__all__ = [
    "FiberClass",
    "FiberCensus",
    "FiberEnumeration",
    "candidate_entries",
    "fiber_census",
    "enumerate_fiber",
]
