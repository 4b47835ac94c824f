"""
Constrained pair and triple counts over the integral octonions, and the census
of positive definite Jordan elements over diag(2, 2, 2).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations, product
from math import isqrt
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from algebra.jordan import JordanElement, local_data
from algebra.octonion import (
    Octonion,
    batch_conj,
    batch_left_multiply,
    integral_mask,
    left_multiplication_matrix,
)
from config.settings import settings
from models.errors import InputValidationError

from .shells import imaginary_rows, points_with_real_part, shell_count
from .workers import partition, run_partitioned

STuple = Tuple[int, int, int, int, int]
DTriple = Tuple[int, int, int]

# Column order of the census table
DIAG222_COLUMNS: Tuple[DTriple, ...] = (
    (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 1, 6), (1, 2, 4), (2, 4, 8),
)


# ============== Shifted and product-constrained pairs ==============

def _half_units() -> np.ndarray:
    """Norm-1 integral octonions with real part 1/2"""
    return points_with_real_part(1, 4)


def count_half_shifted(norm_target: int = 1) -> int:
    """#{x imaginary : 1/2 + x integral, N(1/2 + x) = norm_target}"""
    if norm_target < 0:
        raise InputValidationError(f"norm_target must be non-negative, got {norm_target}")
    return int(points_with_real_part(1, 4 * norm_target).shape[0])


def _count_products(left: np.ndarray, right: np.ndarray, conjugate_left: bool, dc0: int) -> int:
    """#{(u, v) : (u or conj u) * v is integral with doubled real part dc0}"""
    factors = batch_conj(left) if conjugate_left else left
    total = 0
    for row in factors:
        products = batch_left_multiply(row, right)
        if not integral_mask(products).all():
            raise ArithmeticError("Product of integral octonions left the order")
        total += int(np.count_nonzero(products[:, 0] == dc0))
    return total


def count_pairs_shifted_shifted() -> int:
    """#{(x, y) : 1/2 + x, 1/2 + y unit and (1/2 + x)' (1/2 + y) = 1/2 + z, z imaginary}"""
    units = _half_units()
    return _count_products(units, units, conjugate_left=True, dc0=1)


def count_pairs_shifted_integral(conjugate_first: bool = True) -> int:
    """#{(x, y) : 1/2 + x unit, y imaginary unit, (1/2 + x)' y imaginary}"""
    return _count_products(_half_units(), imaginary_rows(1), conjugate_left=conjugate_first, dc0=0)


def count_unit_products(n: int) -> int:
    """#{(x, y) imaginary integral : N(x) = 1, N(y) = n, x' y imaginary integral}"""
    if n < 0:
        raise InputValidationError(f"n must be non-negative, got {n}")
    return _count_products(imaginary_rows(1), imaginary_rows(n), conjugate_left=True, dc0=0)


def count_pairs_imaginary_product() -> int:
    return count_unit_products(1)


def count_pairs_by_norm_sum(a: int, m: int) -> int:
    """#{(y, z) imaginary integral : N(y) + N(z) = m, N(y) < a, N(z) < a}"""
    if m < 0:
        raise InputValidationError(f"m must be non-negative, got {m}")
    total = 0
    for n1 in range(0, min(a, m + 1)):
        n2 = m - n1
        if n2 >= a:
            continue
        total += shell_count(n1, imaginary=True) * shell_count(n2, imaginary=True)
    return total


# ============== Triple counts ==============

class TripleStat(BaseModel):
    norms: Tuple[int, int, int]
    t: int
    count: int


class TripleHistogram(BaseModel):
    """Counts of tr((xz)y') over a norm triple, with one witness index triple per trace"""
    norms: Tuple[int, int, int]
    counts: Dict[int, int] = Field(default_factory=dict)
    witnesses: Dict[int, Tuple[int, int, int]] = Field(default_factory=dict)

    def count(self, t: int) -> int:
        return self.counts.get(t, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def witness(self, t: int) -> Tuple[Octonion, Octonion, Octonion]:
        """(x, y, z) realising trace t"""
        ix, iy, iz = self.witnesses[t]
        n1, n2, n3 = self.norms
        return tuple(
            Octonion.raw(int(v) for v in imaginary_rows(n)[i])
            for n, i in ((n1, ix), (n2, iy), (n3, iz))
        )


def trace_bound(n1: int, n2: int, n3: int) -> int:
    """|tr((xz)y')| <= 2 sqrt(N(x)N(y)N(z))"""
    return isqrt(4 * n1 * n2 * n3)


def _triple_chunk(task: Tuple[int, int, int, int, int]) -> Tuple[np.ndarray, Dict[int, Tuple[int, int, int]]]:
    n1, n2, n3, start, stop = task
    tmax = trace_bound(n1, n2, n3)
    xs = imaginary_rows(n1)
    ys = imaginary_rows(n2).astype(np.float64)
    zs = imaginary_rows(n3).astype(np.float64)

    hist = np.zeros(2 * tmax + 1, dtype=np.int64)
    witnesses: Dict[int, Tuple[int, int, int]] = {}
    for ix in range(start, stop):
        # rows of zs @ L are twice the doubled coordinates of x z
        products = zs @ left_multiplication_matrix(xs[ix]).astype(np.float64)
        fourfold = np.rint(products @ ys.T).astype(np.int64)
        if np.any(fourfold & 3):
            raise ArithmeticError(f"Non-integral trace form at x index {ix}")
        traces = (fourfold >> 2) + tmax
        local = np.bincount(traces.ravel(), minlength=2 * tmax + 1)
        hist += local
        for shifted in np.flatnonzero(local):
            t = int(shifted) - tmax
            if t not in witnesses:
                iz, iy = divmod(int(np.flatnonzero(traces.ravel() == shifted)[0]), traces.shape[1])
                witnesses[t] = (ix, iy, iz)
    return hist, witnesses


def _check_norms(n1: int, n2: int, n3: int) -> None:
    for n in (n1, n2, n3):
        if not 0 <= n <= settings.MAX_TRIPLE_NORM:
            raise InputValidationError(
                f"Triple norms must lie in 0..{settings.MAX_TRIPLE_NORM}, got {(n1, n2, n3)}"
            )


@lru_cache(maxsize=None)
def _cached_histogram(n1: int, n2: int, n3: int, jobs: int) -> TripleHistogram:
    tmax = trace_bound(n1, n2, n3)
    size = imaginary_rows(n1).shape[0]
    tasks = [(n1, n2, n3, start, stop) for start, stop in partition(size, jobs)]
    logger.debug(f"Triple histogram {(n1, n2, n3)}: {size} outer elements in {len(tasks)} chunks")

    hist = np.zeros(2 * tmax + 1, dtype=np.int64)
    witnesses: Dict[int, Tuple[int, int, int]] = {}
    for chunk_hist, chunk_witnesses in run_partitioned(_triple_chunk, tasks, jobs):
        hist += chunk_hist
        for t, witness in chunk_witnesses.items():
            witnesses.setdefault(t, witness)

    counts = {t - tmax: int(c) for t, c in enumerate(hist) if c}
    return TripleHistogram(norms=(n1, n2, n3), counts=counts, witnesses=witnesses)


def triple_histogram(n1: int, n2: int, n3: int, jobs: Optional[int] = None) -> TripleHistogram:
    _check_norms(n1, n2, n3)
    return _cached_histogram(n1, n2, n3, jobs or settings.DEFAULT_JOBS)


def triple_count(n1: int, n2: int, n3: int, t: int, jobs: Optional[int] = None) -> TripleStat:
    """#{(x, y, z) imaginary integral : N = (n1, n2, n3), tr((xz)y') = t}"""
    histogram = triple_histogram(n1, n2, n3, jobs)
    return TripleStat(norms=(n1, n2, n3), t=t, count=histogram.count(t))


# ============== The diag(2, 2, 2) census ==============

def build_s_set() -> List[STuple]:
    """(n1, n2, n3, t, d) with norms <= 3, |t| within the trace bound and d = 8 - 2 sum(n) + t > 0"""
    members = []
    for n1, n2, n3 in product(range(4), repeat=3):
        tmax = trace_bound(n1, n2, n3)
        for t in range(-tmax, tmax + 1):
            d = 8 - 2 * (n1 + n2 + n3) + t
            if d > 0:
                members.append((n1, n2, n3, t, d))
    return sorted(members)


def orbits(s_set: Optional[List[STuple]] = None) -> List[Tuple[STuple, int]]:
    """Orbit representatives under permuting the norms (descending norms) with orbit sizes"""
    members = s_set if s_set is not None else build_s_set()
    sizes: Counter = Counter()
    for n1, n2, n3, t, d in members:
        a, b, c = sorted((n1, n2, n3), reverse=True)
        sizes[(a, b, c, t, d)] += 1
    return sorted(sizes.items(), key=lambda item: item[0], reverse=True)


def classify_diag222(n1: int, n2: int, n3: int, t: int) -> DTriple:
    """d(T) for T = diag(2,2,2) + imaginary entries of norms (n1, n2, n3) and trace t"""
    d3 = 8 - 2 * (n1 + n2 + n3) + t
    if d3 <= 0:
        raise InputValidationError(f"{(n1, n2, n3, t)} is not positive definite")
    norms = sorted((n1, n2, n3), reverse=True)
    if norms == [0, 0, 0]:
        return (2, 4, 8)
    if norms == [2, 0, 0]:
        return (1, 2, 4)
    return (1, 1, d3)


def _empty_table() -> Dict[DTriple, int]:
    return {column: 0 for column in DIAG222_COLUMNS}


def table_diag222(jobs: Optional[int] = None) -> Dict[DTriple, int]:
    """Census of pd T with T1 = diag(2,2,2) by d(T), summed over orbit representatives"""
    table = _empty_table()
    for (n1, n2, n3, t, _), size in orbits():
        count = triple_count(n1, n2, n3, t, jobs).count
        table[classify_diag222(n1, n2, n3, t)] += size * count
    logger.info(f"✅ diag(2,2,2) census: {sum(table.values())} elements")
    return table


def diag222_element(x: Octonion, y: Octonion, z: Octonion) -> JordanElement:
    return JordanElement.raw(2, 2, 2, x, y, z)


def table_diag222_direct(jobs: Optional[int] = None) -> Dict[DTriple, int]:
    """
    The same census from every ordered norm triple, classified by local_data on
    a witness of each (norms, trace) class.
    """
    table: Dict[DTriple, int] = {}
    for n1, n2, n3 in product(range(4), repeat=3):
        tmax = trace_bound(n1, n2, n3)
        if 8 - 2 * (n1 + n2 + n3) + tmax <= 0:
            continue
        histogram = triple_histogram(n1, n2, n3, jobs)
        for t, count in histogram.counts.items():
            if 8 - 2 * (n1 + n2 + n3) + t <= 0:
                continue
            key = local_data(diag222_element(*histogram.witness(t))).triple()
            table[key] = table.get(key, 0) + count
    logger.info(f"✅ diag(2,2,2) census (direct): {sum(table.values())} elements")
    return table


__all__ = [
    "DIAG222_COLUMNS",
    "TripleStat",
    "TripleHistogram",
    "count_half_shifted",
    "count_pairs_shifted_shifted",
    "count_pairs_shifted_integral",
    "count_pairs_imaginary_product",
    "count_unit_products",
    "count_pairs_by_norm_sum",
    "trace_bound",
    "triple_histogram",
    "triple_count",
    "build_s_set",
    "orbits",
    "classify_diag222",
    "table_diag222",
    "table_diag222_direct",
    "diag222_element",
]
