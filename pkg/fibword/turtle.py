"""
Turtle
Drawing rules and path tracing.

Rules whose turns are all multiples of 90 degrees and whose forward lengths
lie in the golden ring are traced exactly: headings stay integer unit
vectors and coordinates are Golden values. Any other rule is traced in
floating point.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from django.db import models

from .conf import fibword_settings
from .exceptions import AlphabetMismatchError, IllegalDigramError, PairingError, UnknownRuleError
from .golden import HALF, ONE, PHI, ZERO, Golden
from .words import Word

logger = logging.getLogger(__name__)

Number = Union[Golden, float]
Point = Tuple[Number, Number]


@dataclass(frozen=True)
class Forward:
    length: Number


@dataclass(frozen=True)
class Turn:
    """Degrees, positive is counterclockwise."""
    angle: float


TurtleAction = Union[Forward, Turn]


class TokenScheme(models.TextChoices):
    PER_LETTER = 'letter', 'Per letter'
    PER_DIGRAM = 'digram', 'Per digram'
    PER_LETTER_WITH_PARITY = 'parity', 'Per letter with position parity'


@dataclass(frozen=True)
class DrawingRule:
    """
    Token -> action list. Parity tokens are the letter followed by 0 (even
    position) or 1 (odd position).
    """
    name: str
    scheme: TokenScheme
    actions: Dict[str, Tuple[TurtleAction, ...]]
    alphabet: Tuple[str, ...] = ('a', 'b')
    description: str = ''

    @property
    def is_exact(self) -> bool:
        for actions in self.actions.values():
            for action in actions:
                if isinstance(action, Turn) and action.angle % 90:
                    return False
                if isinstance(action, Forward) and not isinstance(action.length, Golden):
                    return False
        return True

    def tokenize(self, word: Word, parity_base: Optional[int] = None) -> List[str]:
        foreign = set(word) - set(self.alphabet)
        if foreign:
            raise AlphabetMismatchError(
                f"Rule {self.name} draws {{{', '.join(self.alphabet)}}}, got {''.join(sorted(foreign))}"
            )
        if self.scheme == TokenScheme.PER_DIGRAM:
            if len(word) % 2:
                raise PairingError(f"Rule {self.name} needs an even number of letters, got {len(word)}")
            tokens = [word[i:i + 2] for i in range(0, len(word), 2)]
            for index, token in enumerate(tokens):
                if token not in self.actions:
                    raise IllegalDigramError(f"Pair {index} is {token}")
            return tokens
        if self.scheme == TokenScheme.PER_LETTER_WITH_PARITY:
            if parity_base is None:
                parity_base = fibword_settings.PARITY_BASE
            return [f"{letter}{(i + parity_base) % 2}" for i, letter in enumerate(word)]
        return list(word)


def _to_and_fro_actions(angle) -> Dict[str, Tuple[TurtleAction, ...]]:
    return {
        'a': (Forward(PHI),),
        'b': (Forward(HALF), Turn(angle), Forward(HALF)),
    }


IDENTITY = DrawingRule(
    'identity', TokenScheme.PER_LETTER,
    {'a': (Forward(PHI),), 'b': (Forward(ONE),)},
    description='a and b tiles laid end to end',
)
TO_AND_FRO = DrawingRule(
    'to-and-fro', TokenScheme.PER_LETTER, _to_and_fro_actions(180),
    description='b folds the path back on itself',
)
DOUBLE_LETTER = DrawingRule(
    'double-letter', TokenScheme.PER_DIGRAM,
    {
        'ab': (Forward(HALF), Turn(-90), Forward(HALF)),
        'aa': (Forward(ONE),),
        'ba': (Forward(HALF), Turn(90), Forward(HALF)),
    },
    description='letters read in pairs, ab turns right and ba turns left',
)
ODD_EVEN = DrawingRule(
    'odd-even', TokenScheme.PER_LETTER_WITH_PARITY,
    {
        'a0': (Forward(ONE), Turn(90)),
        'a1': (Forward(ONE), Turn(-90)),
        'b0': (Forward(ONE),),
        'b1': (Forward(ONE),),
    },
    description='unit steps, an a turns left at even positions and right at odd ones',
)
OMEGA_RULE = DrawingRule(
    'omega', TokenScheme.PER_LETTER,
    {'F': (Forward(ONE),), 'L': (Turn(90),), 'R': (Turn(-90),)},
    alphabet=('F', 'L', 'R'),
    description='F steps forward, L and R turn a quarter',
)

_FIXED_RULES = (IDENTITY, TO_AND_FRO, DOUBLE_LETTER, ODD_EVEN, OMEGA_RULE)


def generalized_rule(angle: float) -> DrawingRule:
    """To-and-fro with the b fold replaced by a turn of angle degrees."""
    return DrawingRule(
        f"angle:{angle:g}", TokenScheme.PER_LETTER, _to_and_fro_actions(angle),
        description=f'b turns {angle:g} degrees between its half steps',
    )


def builtin_rules() -> List[DrawingRule]:
    return list(_FIXED_RULES)


def get_rule(name: str) -> DrawingRule:
    """Look up a builtin rule, or build angle:<deg>."""
    if name.startswith('angle:'):
        try:
            angle = float(name.split(':', 1)[1])
        except ValueError:
            raise UnknownRuleError(f"Bad angle in rule name '{name}'")
        return generalized_rule(angle)
    for rule in _FIXED_RULES:
        if rule.name == name:
            return rule
    known = ', '.join(rule.name for rule in _FIXED_RULES)
    raise UnknownRuleError(f"Unknown drawing rule '{name}'. Known rules: {known}, angle:<deg>")


# Paths

@dataclass
class Path:
    rule: str
    word: Word
    tokens: List[str]
    vertices: List[Point]
    token_spans: List[Tuple[int, int]]
    initial_heading: Tuple
    final_heading: Tuple
    exact: bool
    length: float = 0.0
    headings: List[Tuple] = field(default_factory=list, repr=False)

    @property
    def segment_count(self) -> int:
        return len(self.vertices) - 1

    def float_vertices(self) -> List[Tuple[float, float]]:
        return [(float(x), float(y)) for x, y in self.vertices]

    def as_array(self) -> np.ndarray:
        return np.array(self.float_vertices(), dtype=float).reshape(-1, 2)


def _rotate_exact(heading: Tuple[int, int], angle: float) -> Tuple[int, int]:
    dx, dy = heading
    for _ in range(int(angle // 90) % 4):
        dx, dy = -dy, dx
    return dx, dy


def _check_heading(heading) -> Tuple[int, int]:
    heading = tuple(heading)
    if heading not in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        raise ValueError(f"Exact tracing needs an axis-aligned unit heading, got {heading}")
    return heading


def trace(
    word: Word,
    rule: DrawingRule,
    start: Optional[Point] = None,
    heading: Optional[Sequence[int]] = None,
    parity_base: Optional[int] = None,
) -> Path:
    """
    Trace word under rule.

    Args:
        word: word over the rule's alphabet
        rule: drawing rule
        start: start point (default origin)
        heading: initial unit heading (default HEADING, (0, -1) with y up)
        parity_base: position parity offset for parity rules

    Returns:
        Path whose token_spans[i] is the vertex range drawn by token i
    """
    tokens = rule.tokenize(word, parity_base)
    if heading is None:
        heading = fibword_settings.HEADING
    if rule.is_exact:
        return _trace_exact(word, rule, tokens, start, _check_heading(heading))
    return _trace_float(word, rule, tokens, start, heading)


def _trace_exact(word, rule, tokens, start, heading) -> Path:
    x, y = start if start is not None else (ZERO, ZERO)
    if not isinstance(x, Golden):
        x, y = Golden.from_int(int(x)), Golden.from_int(int(y))
    vertices = [(x, y)]
    headings = [heading]
    spans = []
    length = 0.0
    initial = heading
    for token in tokens:
        first = len(vertices) - 1
        for action in rule.actions[token]:
            if isinstance(action, Turn):
                heading = _rotate_exact(heading, action.angle)
                continue
            x = x + action.length * heading[0]
            y = y + action.length * heading[1]
            vertices.append((x, y))
            headings.append(heading)
            length += float(action.length)
        spans.append((first, len(vertices) - 1))
    return Path(rule.name, word, tokens, vertices, spans, initial, heading, True, length, headings)


def _trace_float(word, rule, tokens, start, heading) -> Path:
    x, y = (float(v) for v in start) if start is not None else (0.0, 0.0)
    direction = math.degrees(math.atan2(heading[1], heading[0]))
    initial = (math.cos(math.radians(direction)), math.sin(math.radians(direction)))
    vertices = [(x, y)]
    headings = [initial]
    spans = []
    length = 0.0
    for token in tokens:
        first = len(vertices) - 1
        for action in rule.actions[token]:
            if isinstance(action, Turn):
                direction += action.angle
                continue
            step = float(action.length)
            radians = math.radians(direction)
            x += step * math.cos(radians)
            y += step * math.sin(radians)
            vertices.append((x, y))
            headings.append((math.cos(radians), math.sin(radians)))
            length += step
        spans.append((first, len(vertices) - 1))
    radians = math.radians(direction)
    final = (math.cos(radians), math.sin(radians))
    return Path(rule.name, word, tokens, vertices, spans, initial, final, False, length, headings)


def displacement(path: Path) -> Point:
    (x0, y0), (x1, y1) = path.vertices[0], path.vertices[-1]
    return x1 - x0, y1 - y0


def bbox(path: Path) -> Tuple[Number, Number, Number, Number]:
    """(min_x, min_y, max_x, max_y)"""
    xs = [v[0] for v in path.vertices]
    ys = [v[1] for v in path.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def bounding_box(path: Path) -> Tuple[Number, Number]:
    """(width, height)"""
    min_x, min_y, max_x, max_y = bbox(path)
    return max_x - min_x, max_y - min_y


def extent(path: Path) -> float:
    width, height = bounding_box(path)
    return max(float(width), float(height))


def bbox_ratio(path: Path) -> float:
    """Height over width of the bounding box."""
    width, height = bounding_box(path)
    if float(width) == 0:
        raise ValueError("The path has zero width")
    return float(height) / float(width)


@dataclass(frozen=True)
class Symmetry:
    symmetric: bool
    center: Tuple[float, float]


def half_turn_symmetry(path: Path) -> Symmetry:
    """
    The path is symmetric under a half turn about the midpoint c of its ends
    when v_i + v_{L-i} = 2c for every i and it leaves heading the way it came in.
    """
    first, last = path.vertices[0], path.vertices[-1]
    center = ((float(first[0]) + float(last[0])) / 2, (float(first[1]) + float(last[1])) / 2)
    if path.exact:
        total = (first[0] + last[0], first[1] + last[1])
        mirrored = all(
            (a[0] + b[0], a[1] + b[1]) == total
            for a, b in zip(path.vertices, reversed(path.vertices))
        )
        same_heading = path.initial_heading == path.final_heading
    else:
        points = path.as_array()
        mirrored = bool(np.allclose(points + points[::-1], points[0] + points[-1], atol=1e-9))
        same_heading = bool(np.allclose(path.initial_heading, path.final_heading, atol=1e-9))
    return Symmetry(mirrored and same_heading, center)
