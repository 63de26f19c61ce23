"""
Fire-hose angle search for the generalized to-and-fro rule.

The drift of a path is the rotation between the displacement of its first
half and that of its second half, in degrees wrapped to (-180, 180]. An
angle whose path projects straight forward overall has zero drift.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .conf import fibword_settings
from .exceptions import BracketError
from .turtle import generalized_rule, trace
from .words import Word, fib_word

logger = logging.getLogger(__name__)

GENUINE_DRIFT = 90.0


def _wrap(degrees: float) -> float:
    while degrees > 180:
        degrees -= 360
    while degrees <= -180:
        degrees += 360
    return degrees


def _is_fold(angle: float) -> bool:
    return math.isclose(angle % 360, 180.0)


def net_heading_drift(word: Word, angle: float) -> float:
    # a 180 degree fold keeps the path on one line: no drift by convention
    if _is_fold(angle):
        return 0.0
    points = trace(word, generalized_rule(angle)).as_array()
    last = len(points) - 1
    middle = last // 2
    first = points[middle] - points[0]
    second = points[last] - points[middle]
    turned = math.atan2(second[1], second[0]) - math.atan2(first[1], first[0])
    return _wrap(math.degrees(turned))


def straightness(word: Word, angle: float) -> float:
    """End-to-end reach over path length, 1 for a straight path."""
    path = trace(word, generalized_rule(angle))
    if not path.length:
        return 0.0
    points = path.as_array()
    return float(np.linalg.norm(points[-1] - points[0])) / path.length


@dataclass
class DriftSample:
    angle: float
    drift: float


def scan(word: Word, low: float, high: float, step: Optional[float] = None) -> List[DriftSample]:
    if step is None:
        step = fibword_settings.FIREHOSE_SCAN_STEP
    count = max(1, int(round((high - low) / step)))
    return [DriftSample(float(a), net_heading_drift(word, float(a))) for a in np.linspace(low, high, count + 1)]


def _brackets(samples: List[DriftSample]) -> List[Tuple[float, float]]:
    brackets = []
    for left, right in zip(samples, samples[1:]):
        if abs(left.drift) >= GENUINE_DRIFT or abs(right.drift) >= GENUINE_DRIFT:
            continue
        if left.drift == 0 or left.drift * right.drift < 0:
            brackets.append((left.angle, right.angle))
    return brackets


@dataclass
class FirehoseResult:
    angle: float
    drift: float
    straightness: float
    bracket: Tuple[float, float]
    candidates: List[Tuple[float, float]]


def find_firehose_angle(
    n: int,
    low: float = 130.0,
    high: float = 145.0,
    tolerance: Optional[float] = None,
) -> FirehoseResult:
    """
    Scan [low, high] for sign changes of the drift of F_n, keep those where
    the drift is small on both sides (a wrap through 180 is not a root), and
    bisect the one whose path is straightest. Brackets whose path has curled
    shut (straightness under FIREHOSE_MIN_STRAIGHTNESS) are not roots.

    Raises:
        BracketError: no usable sign change in the bracket
    """
    if not low < high:
        raise BracketError(f"Bracket needs low < high, got ({low}, {high})")
    if tolerance is None:
        tolerance = fibword_settings.FIREHOSE_TOLERANCE
    word = fib_word(n)
    floor = fibword_settings.FIREHOSE_MIN_STRAIGHTNESS
    reach = {}
    for bracket in _brackets(scan(word, low, high)):
        value = straightness(word, (bracket[0] + bracket[1]) / 2)
        if value < floor:
            logger.debug("Dropped curled bracket %s of F_%d (straightness %.4f)", bracket, n, value)
            continue
        reach[bracket] = value
    candidates = list(reach)
    if not candidates:
        raise BracketError(f"Drift of F_{n} has no usable sign change between {low} and {high} degrees")

    lo, hi = max(candidates, key=reach.get)
    bracket = (lo, hi)
    f_lo = net_heading_drift(word, lo)
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        f_mid = net_heading_drift(word, mid)
        logger.debug("Bisect F_%d: [%.4f, %.4f] drift(%.4f) = %.6f", n, lo, hi, mid, f_mid)
        if f_mid == 0:
            lo = hi = mid
            break
        if (f_lo < 0) == (f_mid < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    angle = (lo + hi) / 2
    result = FirehoseResult(angle, net_heading_drift(word, angle), straightness(word, angle), bracket, candidates)
    logger.info("Fire-hose angle for F_%d: %.4f degrees (straightness %.4f)", n, angle, result.straightness)
    return result
