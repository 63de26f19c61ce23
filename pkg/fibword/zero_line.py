"""
Zero Deviation Line
One-dimensional to-and-fro tracing with exact golden-ring positions,
deviation-from-zero diagrams, zero excursions and the growth chart.

Under the to-and-fro rule an a moves phi in the current direction and a b
moves 1/2, reverses, and moves 1/2 back. Positions at letter boundaries are
therefore always whole multiples of phi, and the trace touches zero only there.
"""
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .conf import fibword_settings
from .golden import HALF, HALF_PHI, PHI, ZERO, Golden
from .legality import BoundedFactor, is_legal_factor
from .words import Word, _check_fib_word, fib_word

logger = logging.getLogger(__name__)

GROWTH_FACTORS = ('aba', 'baaba')


@dataclass
class Trace1D:
    """
    positions[0] is the start; every a adds one position and every b adds
    two (the fold and the return). boundaries[i] indexes the position reached
    after letter i.
    """
    word: Word
    positions: List[Golden]
    boundaries: List[int]
    final_direction: int

    @property
    def final_position(self) -> Golden:
        return self.positions[-1]

    def boundary_position(self, letter_index: int) -> Golden:
        return self.positions[self.boundaries[letter_index]]


def trace_1d(word: Word, direction: int = 1) -> Trace1D:
    _check_fib_word(word)
    position = ZERO
    positions = [position]
    boundaries = []
    for letter in word:
        if letter == 'a':
            position = position + PHI * direction
            positions.append(position)
        else:
            positions.append(position + HALF * direction)
            direction = -direction
            positions.append(position)
        boundaries.append(len(positions) - 1)
    return Trace1D(word, positions, boundaries, direction)


def max_abs(values: List[Golden]) -> Golden:
    return max((abs(v) for v in values), default=ZERO)


def max_deviation(n: int) -> Golden:
    """Largest |position| along the to-and-fro trace of F_n."""
    return max_abs(trace_1d(fib_word(n)).positions)


# Excursions

@dataclass(frozen=True)
class Excursion:
    word: Word
    start: int
    side: int
    closed: bool
    key: Word


def canonical_key(word: Word, identify_reversal: bool = False) -> Word:
    """
    Excursion identity up to sign flip. Once the first move is taken as
    positive the moves are fixed by the letters, so the letters are the key.
    """
    if identify_reversal:
        return min(word, word[::-1])
    return word


def structure_order(key: Word) -> Tuple[int, Word]:
    return len(key), key


@dataclass
class ExcursionReport:
    excursions: List[Excursion]
    structures: List[Word]
    identify_reversal: bool

    @property
    def closed(self) -> List[Excursion]:
        return [e for e in self.excursions if e.closed]

    def counts(self) -> Dict[Word, int]:
        return dict(Counter(e.key for e in self.closed))


def zero_excursions(word: Word, identify_reversal: Optional[bool] = None) -> ExcursionReport:
    """
    Split the trace at every return to zero.

    A trace that ends off the axis contributes a final open excursion; only
    closed excursions are catalogued as structures.
    """
    if identify_reversal is None:
        identify_reversal = fibword_settings.IDENTIFY_REVERSAL
    trace = trace_1d(word)
    excursions = []
    start = 0
    side = 0
    direction = 1
    for i, letter in enumerate(word):
        if i == start:
            side = direction
        if letter == 'b':
            direction = -direction
        if trace.boundary_position(i).is_zero():
            piece = word[start:i + 1]
            excursions.append(Excursion(piece, start, side, True, canonical_key(piece, identify_reversal)))
            start = i + 1
    if start < len(word):
        piece = word[start:]
        excursions.append(Excursion(piece, start, side, False, canonical_key(piece, identify_reversal)))
    structures = sorted({e.key for e in excursions if e.closed}, key=structure_order)
    return ExcursionReport(excursions, structures, identify_reversal)


# Deviation diagram

@dataclass(frozen=True)
class ControlPoint:
    x: Golden
    level: Fraction
    tile: str


@dataclass
class DeviationDiagram:
    """
    The 1-D trace unfolded downwards: A tiles stay horizontal and every b
    folds back one level lower. Vertex levels count folds; y = -level * step.
    """
    word: Word
    vertices: List[Tuple[Golden, int]]
    control_points: List[ControlPoint]
    letter_vertices: List[int]
    step: float
    excursions: ExcursionReport = None

    @property
    def tallies(self) -> Counter:
        return Counter(cp.x for cp in self.control_points)

    @property
    def total_drop(self) -> float:
        return self.vertices[-1][1] * self.step

    def points(self) -> List[Tuple[float, float]]:
        return [(float(x), -level * self.step) for x, level in self.vertices]

    def is_mirror_symmetric(self) -> bool:
        last = len(self.vertices) - 1
        total = self.vertices[-1][1]
        return all(
            self.vertices[i][0] == self.vertices[last - i][0]
            and self.vertices[i][1] + self.vertices[last - i][1] == total
            for i in range(len(self.vertices))
        )


def deviation_diagram(word: Word, step: Optional[float] = None) -> DeviationDiagram:
    _check_fib_word(word)
    if step is None:
        step = fibword_settings.DEVIATION_STEP
    x, level, direction = ZERO, 0, 1
    vertices = [(x, level)]
    letter_vertices = []
    controls = []
    for letter in word:
        if letter == 'a':
            controls.append(ControlPoint(x + HALF_PHI * direction, Fraction(level), 'A'))
            x = x + PHI * direction
            vertices.append((x, level))
        else:
            fold = x + HALF * direction
            controls.append(ControlPoint(fold, Fraction(2 * level + 1, 2), 'B'))
            vertices.append((fold, level))
            level += 1
            vertices.append((fold, level))
            direction = -direction
            vertices.append((x, level))
        letter_vertices.append(len(vertices) - 1)
    return DeviationDiagram(word, vertices, controls, letter_vertices, step, zero_excursions(word))


# Growth chart

@dataclass
class GrowthNode:
    word: Word
    depth: int
    children: List['GrowthNode'] = field(default_factory=list)
    expanded: bool = False

    @property
    def tiles(self) -> int:
        return len(self.word)


@dataclass
class GrowthChart:
    root: GrowthNode
    nodes: List[GrowthNode]
    max_tiles: int
    horizon: int
    structures: List[Word]

    @property
    def branch_points(self) -> List[GrowthNode]:
        return [node for node in self.nodes if len(node.children) > 1]


def growth_chart(max_tiles: int = 30, horizon: Optional[int] = None) -> GrowthChart:
    """
    Breadth-first growth from aba, appending aba or baaba while the result
    stays legal.

    Args:
        max_tiles: structures with fewer tiles than this are catalogued
        horizon: nodes shorter than this many letters are expanded
            (default GROWTH_HORIZON_FACTOR * max_tiles)

    Returns:
        GrowthChart with every node in breadth-first order
    """
    if max_tiles < 3:
        raise ValueError("The growth chart starts from aba, so max_tiles >= 3")
    if horizon is None:
        horizon = fibword_settings.GROWTH_HORIZON_FACTOR * max_tiles
    root = GrowthNode('aba', 0)
    nodes = [root]
    queue = deque([root])
    structures = set()
    while queue:
        node = queue.popleft()
        for excursion in zero_excursions(node.word, identify_reversal=False).closed:
            if len(excursion.key) < max_tiles:
                structures.add(excursion.key)
        if node.tiles >= horizon:
            continue
        node.expanded = True
        for factor in GROWTH_FACTORS:
            candidate = node.word + factor
            if is_legal_factor(BoundedFactor(candidate)):
                child = GrowthNode(candidate, node.depth + 1)
                node.children.append(child)
                nodes.append(child)
                queue.append(child)
        if not node.children:
            logger.warning("Growth node %s has no legal extension", node.word)
    logger.info("Growth chart: %d nodes, %d structures under %d tiles", len(nodes), len(structures), max_tiles)
    return GrowthChart(root, nodes, max_tiles, horizon, sorted(structures, key=structure_order))
