"""
Norm shells of the integral octonions.

In doubled coordinates the Coxeter order is {v in Z^8 : v mod 2 in C}, where C
is the 16-word binary code spanned by the alpha-basis rows mod 2 (all 2e_i lie
in the order, so only parities matter). A shell is enumerated one parity
pattern at a time by meeting in the middle over the two halves (dc0..dc3) and
(dc4..dc7).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import isqrt
from typing import Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from algebra.octonion import ALPHA_DOUBLED, Octonion
from models.errors import InputValidationError


@lru_cache(maxsize=1)
def parity_patterns() -> Tuple[Tuple[int, ...], ...]:
    """The binary code C of admissible coordinate parities"""
    rows = np.array(ALPHA_DOUBLED, dtype=np.int64) % 2
    words = set()
    for mask in itertools.product((0, 1), repeat=8):
        word = (np.array(mask, dtype=np.int64) @ rows) % 2
        words.add(tuple(int(v) for v in word))
    if len(words) != 16:
        raise ArithmeticError(f"Parity code of the alpha-basis has {len(words)} words, expected 16")
    return tuple(sorted(words))


@lru_cache(maxsize=None)
def _half_vectors(parities: Tuple[int, ...], bound: int) -> np.ndarray:
    """All 4-vectors with the given coordinate parities and squared length <= bound"""
    r = isqrt(bound)
    axes = [[v for v in range(-r, r + 1) if (v - p) % 2 == 0] for p in parities]
    grid = np.array(list(itertools.product(*axes)), dtype=np.int64).reshape(-1, 4)
    grid = grid[(grid * grid).sum(axis=1) <= bound]
    grid.flags.writeable = False
    return grid


def _empty() -> np.ndarray:
    return np.zeros((0, 8), dtype=np.int64)


def _enumerate(bound: int, exact: bool, dc0: Optional[int] = None) -> np.ndarray:
    """
    Rows v of the order with sum(v^2) == bound (exact) or <= bound, optionally
    with a fixed doubled real coordinate. Rows come back sorted and unique.
    """
    if bound < 0:
        return _empty()
    blocks = []
    for word in parity_patterns():
        if dc0 is not None and (dc0 - word[0]) % 2:
            continue
        left = _half_vectors(word[:4], bound)
        if dc0 is not None:
            left = left[left[:, 0] == dc0]
        if not len(left):
            continue
        right = _half_vectors(word[4:], bound)
        left_sums = (left * left).sum(axis=1)
        right_sums = (right * right).sum(axis=1)
        order = np.argsort(right_sums, kind="stable")
        right, right_sums = right[order], right_sums[order]

        for s in np.unique(left_sums):
            rest = bound - int(s)
            lo = np.searchsorted(right_sums, rest, side="left") if exact else 0
            hi = np.searchsorted(right_sums, rest, side="right")
            if hi <= lo:
                continue
            lrows = left[left_sums == s]
            rrows = right[lo:hi]
            blocks.append(np.hstack([
                np.repeat(lrows, len(rrows), axis=0),
                np.tile(rrows, (len(lrows), 1)),
            ]))

    if not blocks:
        return _empty()
    return np.unique(np.vstack(blocks), axis=0)


def shell_points(norm4: int, dc0: Optional[int] = None) -> np.ndarray:
    """Doubled coordinates of every integral octonion with 4N = norm4"""
    return _enumerate(norm4, exact=True, dc0=dc0)


def lattice_points(max_norm4: int, dc0: Optional[int] = None) -> np.ndarray:
    """Doubled coordinates of every integral octonion with 4N <= max_norm4"""
    return _enumerate(max_norm4, exact=False, dc0=dc0)


def points_with_real_part(dc0: int, norm4: int) -> np.ndarray:
    """Shell elements whose doubled e0-coordinate equals dc0"""
    return shell_points(norm4, dc0=dc0)


# ============== Shells ==============

class Shell(BaseModel):
    """Every element of a fixed norm, as sorted doubled-coordinate rows"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    norm: int
    imaginary: bool
    coordinates: np.ndarray

    @property
    def count(self) -> int:
        return int(self.coordinates.shape[0])

    @property
    def elements(self) -> Tuple[Octonion, ...]:
        return tuple(Octonion.raw(int(v) for v in row) for row in self.coordinates)

    def __len__(self) -> int:
        return self.count


@lru_cache(maxsize=None)
def imaginary_rows(n: int) -> np.ndarray:
    """Imaginary shell of norm n >= 0 as a read-only array (n = 0 gives the zero row)"""
    if n < 0:
        raise InputValidationError(f"Shell norm must be non-negative, got {n}")
    rows = shell_points(4 * n, dc0=0)
    rows.flags.writeable = False
    return rows


@lru_cache(maxsize=None)
def full_rows(n: int) -> np.ndarray:
    if n < 0:
        raise InputValidationError(f"Shell norm must be non-negative, got {n}")
    rows = shell_points(4 * n)
    rows.flags.writeable = False
    return rows


def shell_imaginary(n: int) -> Shell:
    """The N(w) = n shell of the imaginary integral octonions; its size is N_ioc(n)"""
    if n < 1:
        raise InputValidationError(f"shell_imaginary needs n >= 1, got {n}")
    shell = Shell(norm=n, imaginary=True, coordinates=imaginary_rows(n))
    logger.debug(f"Imaginary shell n={n}: {shell.count} elements")
    return shell


def shell_full(n: int) -> Shell:
    """The N(w) = n shell of the integral octonions; its size is N_oc(n)"""
    if n < 1:
        raise InputValidationError(f"shell_full needs n >= 1, got {n}")
    shell = Shell(norm=n, imaginary=False, coordinates=full_rows(n))
    logger.debug(f"Full shell n={n}: {shell.count} elements")
    return shell


@lru_cache(maxsize=None)
def shell_count(n: int, imaginary: bool = False) -> int:
    """Size of a shell from half-vector histograms, without materialising it"""
    if n < 0:
        raise InputValidationError(f"Shell norm must be non-negative, got {n}")
    bound = 4 * n
    total = 0
    for word in parity_patterns():
        if imaginary and word[0]:
            continue
        left = _half_vectors(word[:4], bound)
        if imaginary:
            left = left[left[:, 0] == 0]
        right = _half_vectors(word[4:], bound)
        left_hist = np.bincount((left * left).sum(axis=1), minlength=bound + 1)
        right_hist = np.bincount((right * right).sum(axis=1), minlength=bound + 1)
        total += sum(int(left_hist[s]) * int(right_hist[bound - s]) for s in range(bound + 1))
    return total


__all__ = [
    "Shell",
    "parity_patterns",
    "shell_points",
    "lattice_points",
    "points_with_real_part",
    "imaginary_rows",
    "full_rows",
    "shell_imaginary",
    "shell_full",
    "shell_count",
]
