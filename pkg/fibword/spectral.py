"""
Spectral Analysis
Incidence matrices, primitivity, Perron-Frobenius data, letter frequencies and tile lengths
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .conf import fibword_settings
from .exceptions import PrimitivityError
from .words import Letter, Substitution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IncidenceMatrix:
    """
    Entry (r, c) counts letter r in the image of letter c.
    Entries are exact Python integers held in an object array.
    """
    alphabet: Tuple[Letter, ...]
    entries: np.ndarray

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def tolist(self):
        return [[int(v) for v in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return self.alphabet == other.alphabet and self.tolist() == other.tolist()


@dataclass(frozen=True)
class PerronData:
    lambda_pf: float
    right_vector: Tuple[float, ...]
    left_vector: Tuple[float, ...]
    second_modulus: float
    unit_letter: Letter


def incidence(subst: Substitution) -> IncidenceMatrix:
    letters = subst.alphabet
    entries = np.array(
        [[subst.images[c].count(r) for c in letters] for r in letters],
        dtype=object,
    )
    return IncidenceMatrix(letters, entries)


def from_rows(alphabet, rows) -> IncidenceMatrix:
    return IncidenceMatrix(tuple(alphabet), np.array(rows, dtype=object))


def power(matrix: IncidenceMatrix, n: int) -> IncidenceMatrix:
    """Exact integer power; n = 0 gives the identity."""
    if n < 0:
        raise ValueError("Matrix powers are taken for n >= 0")
    return IncidenceMatrix(matrix.alphabet, np.linalg.matrix_power(matrix.entries, n))


def is_primitive(matrix: IncidenceMatrix) -> Tuple[bool, Optional[int]]:
    """
    Smallest strictly positive power, searched up to the Wielandt bound (d-1)^2 + 1.
    """
    pattern = (matrix.entries > 0).astype(np.int64)
    current = pattern.copy()
    bound = (matrix.size - 1) ** 2 + 1
    for exponent in range(1, bound + 1):
        if current.all():
            return True, exponent
        current = ((current @ pattern) > 0).astype(np.int64)
    return False, None


def _normalize(vector: np.ndarray, index: Optional[int] = None) -> Tuple[float, ...]:
    scale = vector[index] if index is not None else vector.sum()
    return tuple(float(v) for v in vector / scale)


def _power_iteration(entries: np.ndarray) -> Tuple[float, np.ndarray]:
    tolerance = fibword_settings.POWER_ITERATION_TOLERANCE
    cap = fibword_settings.POWER_ITERATION_CAP
    x = np.full(entries.shape[0], 1.0 / entries.shape[0])
    value = 0.0
    for _ in range(cap):
        y = entries @ x
        value = y.sum()
        y = y / value
        if np.abs(y - x).max() < tolerance:
            return float(value), y
        x = y
    logger.warning("Power iteration did not reach %g in %d steps", tolerance, cap)
    return float(value), x


def perron(matrix: IncidenceMatrix, unit_letter: Optional[Letter] = None) -> PerronData:
    """
    Perron-Frobenius eigenvalue and normalized eigenvectors.

    Args:
        matrix: primitive incidence matrix
        unit_letter: letter whose tile length is set to 1 (default: last letter, b for theta)

    Returns:
        PerronData with frequencies (right vector, summing to 1) and tile
        lengths (left vector)
    """
    primitive, _ = is_primitive(matrix)
    if not primitive:
        raise PrimitivityError(f"Matrix over {matrix.alphabet} is not primitive")
    unit_letter = unit_letter or matrix.alphabet[-1]
    unit = matrix.alphabet.index(unit_letter)
    m = np.array(matrix.tolist(), dtype=float)

    if matrix.size == 2:
        (a, b), (c, d) = m
        trace, det = a + d, a * d - b * c
        root = math.sqrt(trace * trace - 4 * det)
        lam = (trace + root) / 2
        second = abs((trace - root) / 2)
        right = np.array([b, lam - a])
        left = np.array([c, lam - a])
    else:
        lam, right = _power_iteration(m)
        _, left = _power_iteration(m.T)
        moduli = sorted(np.abs(np.linalg.eigvals(m)), reverse=True)
        second = float(moduli[1])

    return PerronData(
        lambda_pf=float(lam),
        right_vector=_normalize(right),
        left_vector=_normalize(left, unit),
        second_modulus=float(second),
        unit_letter=unit_letter,
    )
