"""
Self-intersection checks for traced paths.

Contacts between two segments fall into three classes: a proper crossing
(the interiors meet in one point), a collinear overlap of positive length,
and a touch (the segments meet only at an endpoint of one of them).
Consecutive segments always share a vertex, so for them only a backtracking
overlap is counted.
"""
import logging
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple

from .turtle import Path

logger = logging.getLogger(__name__)

EPSILON = 1e-9


@dataclass
class IntersectionReport:
    proper_crossings: int = 0
    collinear_overlaps: int = 0
    vertex_touches: int = 0
    exact: bool = True

    @property
    def self_avoiding(self) -> bool:
        return not (self.proper_crossings or self.collinear_overlaps or self.vertex_touches)


def _exact_coordinates(path: Path) -> List[Tuple]:
    """Integer half-units when no coordinate carries a phi part."""
    if all(x.p == 0 and y.p == 0 for x, y in path.vertices):
        return [(x.q, y.q) for x, y in path.vertices]
    return list(path.vertices)


def self_intersections(path: Path) -> IntersectionReport:
    if path.exact:
        return _axis_aligned_sweep(path)
    return _pairwise_float(path)


def _axis_aligned_sweep(path: Path) -> IntersectionReport:
    """
    Horizontal and vertical segments are grouped by their supporting line;
    collinear contacts are found by a sorted scan of each group and
    perpendicular contacts by bisecting the horizontals on y.
    """
    report = IntersectionReport(exact=True)
    points = _exact_coordinates(path)
    horizontal = defaultdict(list)
    vertical = defaultdict(list)
    for index, (p, q) in enumerate(zip(points, points[1:])):
        if p[1] == q[1]:
            lo, hi = sorted((p[0], q[0]))
            horizontal[p[1]].append((lo, hi, index))
        else:
            lo, hi = sorted((p[1], q[1]))
            vertical[p[0]].append((lo, hi, index))

    for groups in (horizontal, vertical):
        for segments in groups.values():
            _scan_collinear(sorted(segments), report)

    rows = sorted(horizontal)
    for x, columns in vertical.items():
        for y_lo, y_hi, v_index in columns:
            for y in rows[bisect_left(rows, y_lo):bisect_right(rows, y_hi)]:
                for x_lo, x_hi, h_index in horizontal[y]:
                    if not x_lo <= x <= x_hi or abs(v_index - h_index) == 1:
                        continue
                    if x_lo < x < x_hi and y_lo < y < y_hi:
                        report.proper_crossings += 1
                    else:
                        report.vertex_touches += 1
    logger.debug("Sweep over %d segments: %s", len(points) - 1, report)
    return report


def _scan_collinear(segments, report: IntersectionReport) -> None:
    active = []
    for lo, hi, index in segments:
        active = [seg for seg in active if not seg[1] < lo]
        for _, other_hi, other in active:
            overlap = min(hi, other_hi) > lo
            if overlap:
                report.collinear_overlaps += 1
            elif abs(index - other) != 1:
                report.vertex_touches += 1
        active.append((lo, hi, index))


def _orientation(p, q, r) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return 0 if abs(d) < EPSILON else (1 if d > 0 else -1)


def _on_segment(p, q, r) -> bool:
    return (min(p[0], q[0]) - EPSILON <= r[0] <= max(p[0], q[0]) + EPSILON
            and min(p[1], q[1]) - EPSILON <= r[1] <= max(p[1], q[1]) + EPSILON)


def _same_point(p, q) -> bool:
    return abs(p[0] - q[0]) < EPSILON and abs(p[1] - q[1]) < EPSILON


def _collinear_overlap(p1, p2, p3, p4) -> bool:
    axis = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
    a_lo, a_hi = sorted((p1[axis], p2[axis]))
    b_lo, b_hi = sorted((p3[axis], p4[axis]))
    return min(a_hi, b_hi) - max(a_lo, b_lo) > EPSILON


def _pairwise_float(path: Path) -> IntersectionReport:
    report = IntersectionReport(exact=False)
    points = path.float_vertices()
    segments = list(zip(points, points[1:]))
    for (i, (p1, p2)), (j, (p3, p4)) in combinations(enumerate(segments), 2):
        o1, o2 = _orientation(p1, p2, p3), _orientation(p1, p2, p4)
        o3, o4 = _orientation(p3, p4, p1), _orientation(p3, p4, p2)
        adjacent = j == i + 1
        if o1 == o2 == 0:
            if _collinear_overlap(p1, p2, p3, p4):
                report.collinear_overlaps += 1
            elif not adjacent and any(
                _same_point(a, b) for a in (p1, p2) for b in (p3, p4)
            ):
                report.vertex_touches += 1
            continue
        if adjacent:
            continue
        if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
            report.proper_crossings += 1
        elif (
            (o1 == 0 and _on_segment(p1, p2, p3))
            or (o2 == 0 and _on_segment(p1, p2, p4))
            or (o3 == 0 and _on_segment(p3, p4, p1))
            or (o4 == 0 and _on_segment(p3, p4, p2))
        ):
            report.vertex_touches += 1
    return report
