"""
Fractal Analysis
Displacement-vector recurrences of the double-letter paths, similarity and
box-counting dimensions, limiting ratios and periodic approximations.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DimensionDomainError, FitError, ResidueError, UnderflowError
from .turtle import DOUBLE_LETTER, Path, bbox, bbox_ratio, extent, trace
from .words import fib_number, trim_last_two

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]

SEED_VECTORS: Dict[int, Vector] = {4: (-2, -1), 7: (0, -6)}
MIN_SCALES = 4
MIN_DECADES = 1.5
BOX_SIZE_COUNT = 6


@dataclass(frozen=True)
class VecPair:
    """Components of W_{n-3} (p, q) and W_{n-6} (r, s)."""
    p: int
    q: int
    r: int
    s: int


def vector_recurrence(vp: VecPair, residue: int) -> Vector:
    p, q, r, s = vp.p, vp.q, vp.r, vp.s
    if residue == 1:
        return 2 * p - 2 * q - r + 2, 2 * p + 2 * q - s
    if residue == 4:
        return 2 * p + 2 * q - r - 2, -2 * p + 2 * q - s
    raise ResidueError(f"The displacement recurrence holds for n = 1 or 4 (mod 6), got residue {residue}")


def vector_sequence(n_max: int) -> Dict[int, Vector]:
    """
    Displacements of the double-letter W_n paths for n = 1 (mod 3), 4 <= n <= n_max.
    """
    if n_max < 7:
        raise UnderflowError(f"The sequence is seeded through n = 7, got n_max = {n_max}")
    vectors = dict(SEED_VECTORS)
    for n in range(10, n_max + 1, 3):
        (p, q), (r, s) = vectors[n - 3], vectors[n - 6]
        vectors[n] = vector_recurrence(VecPair(p, q, r, s), n % 6)
    return vectors


def traced_vector(n: int) -> Vector:
    """Displacement of the traced double-letter W_n path, in whole units."""
    dx, dy = trace(trim_last_two(n), DOUBLE_LETTER).vertices[-1]
    return dx.q // 2, dy.q // 2


def similarity_dimension(m_copies: float, scale: float) -> float:
    """
    log m / log s. A scale below 1 is read as the reduction ratio r = 1/s.
    """
    if scale <= 0 or scale == 1:
        raise DimensionDomainError(f"Scale must be positive and not 1, got {scale}")
    if m_copies <= 1:
        raise DimensionDomainError(f"Need more than one copy, got {m_copies}")
    s = 1 / scale if scale < 1 else scale
    return math.log(m_copies) / math.log(s)


def segment_growth_ratio(n: int) -> Fraction:
    """Fib(n+2) / Fib(n-1), converging to phi cubed."""
    if n < 9:
        raise UnderflowError(f"Segment growth is tabulated from n = 9, got {n}")
    return Fraction(fib_number(n + 2), fib_number(n - 1))


def _norm(vector: Vector) -> float:
    return math.hypot(*vector)


def scale_ratio(n: int) -> float:
    """|W_n| / |W_{n-3}| of the double-letter displacement vectors."""
    if n % 3 != 1:
        raise ResidueError(f"Scale ratios are defined for n = 1 (mod 3), got {n}")
    if n < 13:
        raise UnderflowError(f"Scale ratios start at n = 13, got {n}")
    vectors = vector_sequence(n)
    return _norm(vectors[n]) / _norm(vectors[n - 3])


@dataclass(frozen=True)
class DimensionReport:
    m_ratio: float
    s_ratio: float
    dimension: float


def dimension_report(n: int) -> DimensionReport:
    m = float(segment_growth_ratio(n))
    s = scale_ratio(n)
    return DimensionReport(m, s, similarity_dimension(m, s))


def quadratic_residual(x: int, w: int) -> float:
    """(w^2 - 4wx + 2x^2) / w^2, which tends to zero along the sequence."""
    return (w * w - 4 * w * x + 2 * x * x) / (w * w)


def quadratic_residuals(n_max: int) -> List[Tuple[int, float]]:
    """
    Residual for each n = 1 (mod 6) term (0, w) against the preceding
    (x, x+1) term.
    """
    vectors = vector_sequence(n_max)
    return [
        (n, quadratic_residual(vectors[n - 3][0], vectors[n][1]))
        for n in vectors
        if n % 6 == 1 and n - 3 in vectors
    ]


def bbox_ratio_limit(n: int) -> float:
    """Height over width of the double-letter W_n bounding box."""
    if n % 3 != 1:
        raise ResidueError(f"Double-letter paths of W_n need n = 1 (mod 3), got {n}")
    return bbox_ratio(trace(trim_last_two(n), DOUBLE_LETTER))


@dataclass(frozen=True)
class PeriodicApproximation:
    k: int
    segments: int
    scale: float
    dimension: float


def periodic_approx(k: int) -> PeriodicApproximation:
    """
    Treat the double-letter F_k path as a generator: |F_k|/2 segments over
    an end-to-end span of |W_k| + 1 (the half tiles on either side).
    """
    if k % 3 != 1:
        raise ResidueError(f"F_k pairs into digrams only for k = 1 (mod 3), got {k}")
    if k < 7:
        raise UnderflowError(f"Periodic approximations start at k = 7, got {k}")
    segments = fib_number(k + 2) // 2
    span = _norm(vector_sequence(k)[k]) + 1
    scale = int(span) if float(span).is_integer() else span
    return PeriodicApproximation(k, segments, scale, similarity_dimension(segments, scale))


# Box counting

@dataclass
class BoxCountResult:
    estimate: float
    residual: float
    sizes: List[float]
    counts: List[int]
    anchor: Tuple[float, float]


def default_box_sizes(path: Path) -> List[float]:
    """
    Six halving sizes from the largest power of two not above a quarter of
    the larger bounding-box side.
    """
    span = extent(path)
    if span <= 0:
        raise FitError("The path has no extent to count boxes over")
    top = 2.0 ** math.floor(math.log2(span / 4))
    return [top / 2 ** i for i in range(BOX_SIZE_COUNT)]


def _sample(points: np.ndarray, spacing: float) -> np.ndarray:
    samples = [points[:1]]
    for start, end in zip(points[:-1], points[1:]):
        steps = max(1, int(math.ceil(np.linalg.norm(end - start) / spacing)))
        t = np.linspace(0.0, 1.0, steps + 1)[1:, None]
        samples.append(start + t * (end - start))
    return np.concatenate(samples)


def box_count_dimension(path: Path, sizes: Optional[Sequence[float]] = None) -> BoxCountResult:
    """
    Count occupied grid boxes at each size and fit log N against log(1/size).

    The grid is anchored at the lower-left corner of the bounding box. Points
    on the far edge of the box fall in the last row or column.

    Raises:
        FitError: fewer than four sizes, a span under 1.5 decades, or a
            degenerate path
    """
    if path.segment_count < 1:
        raise FitError("Box counting needs at least one segment")
    sizes = sorted((float(s) for s in (sizes or default_box_sizes(path))), reverse=True)
    if len(sizes) < MIN_SCALES:
        raise FitError(f"Box counting needs at least {MIN_SCALES} sizes, got {len(sizes)}")
    if math.log10(sizes[0] / sizes[-1]) < MIN_DECADES - 1e-9:
        raise FitError(f"Box sizes must span {MIN_DECADES} decades, got {sizes[0]:g}..{sizes[-1]:g}")

    min_x, min_y, max_x, max_y = (float(v) for v in bbox(path))
    anchor = np.array([min_x, min_y])
    span = np.array([max_x - min_x, max_y - min_y])
    points = _sample(path.as_array(), sizes[-1] / 4) - anchor

    counts = []
    for size in sizes:
        last = np.maximum(np.ceil(span / size) - 1, 0)
        cells = np.minimum(np.floor(points / size), last).astype(np.int64)
        counts.append(int(len(np.unique(cells, axis=0))))

    x = np.log(1 / np.array(sizes))
    y = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    logger.info("Box counting over %d sizes: dimension %.4f (rms %.4f)", len(sizes), slope, residual)
    return BoxCountResult(float(slope), residual, sizes, counts, (min_x, min_y))
