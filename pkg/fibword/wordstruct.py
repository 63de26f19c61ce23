"""
Word Structure
Factorizations, nested embeddings, digram analysis, direction parity and
one-dimensional displacement classes of the Fibonacci words.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import pandas as pd
from django.db import models

from .exceptions import IllegalDigramError, NotFibonacciPrefixError, PairingError, UnderflowError
from .golden import PHI, ZERO, Golden
from .words import Word, _check_fib_word, fib_word, swap_last_two, trim_last_two
from .zero_line import trace_1d

logger = logging.getLogger(__name__)

Digram = str
DIGRAMS: Tuple[Digram, ...] = ('ab', 'aa', 'ba')

ABA = 'aba'
BAABA = 'baaba'


def central_letter(n: int) -> str:
    """
    Central letter of the palindrome W_n: empty for n = 1 (mod 3), a for
    n = 2 (mod 3), b for n = 0 (mod 3). The rule is checked against W_n.
    """
    if n < 1:
        raise UnderflowError(f"W_n is defined for n >= 1, got {n}")
    expected = ('b', '', 'a')[n % 3]
    word = trim_last_two(n)
    actual = word[len(word) // 2] if len(word) % 2 else ''
    if actual != expected:
        logger.warning("W_%d has central letter %r, residue rule gives %r", n, actual, expected)
    return actual


def pisano_period(m: int) -> int:
    """Period of the Fibonacci sequence modulo m."""
    if m < 1:
        raise ValueError(f"Modulus must be at least 1, got {m}")
    if m == 1:
        return 1
    a, b = 0, 1
    period = 0
    while True:
        a, b = b, (a + b) % m
        period += 1
        if (a, b) == (0, 1):
            return period


# Factorizations

@dataclass
class Factorization:
    factors: List[Word]
    remainder: Word = ''

    def joined(self) -> Word:
        return ''.join(self.factors) + self.remainder

    def counts(self) -> Dict[Word, int]:
        return dict(Counter(self.factors))


def factorize_aba_baaba(word: Word) -> Factorization:
    """
    Parse a Fibonacci prefix into aba and baaba factors.

    The two factors differ in their first letter, so the parse is decided by
    the letter at the cursor. An incomplete tail shorter than five letters
    is kept as the remainder.
    """
    _check_fib_word(word)
    factors = []
    i = 0
    while i < len(word):
        factor = BAABA if word[i] == 'b' else ABA
        if word.startswith(factor, i):
            factors.append(factor)
            i += len(factor)
            continue
        if len(word) - i >= len(BAABA):
            raise NotFibonacciPrefixError(
                f"Neither aba nor baaba matches at position {i}: {word[i:i + 5]}"
            )
        break
    return Factorization(factors, word[i:])


def refine_baaba(factorization: Factorization) -> List[Word]:
    """Split every baaba as (ba)(aba)."""
    refined = []
    for factor in factorization.factors:
        refined.extend(('ba', ABA) if factor == BAABA else (factor,))
    return refined


@dataclass(frozen=True)
class Component:
    index: int
    word: Word


def nested_embedding(m: int) -> List[Component]:
    """
    F_3m as F_{3m-2} F_{3m-5} ... F_4 F_3 F_4 ... F_{3m-5} F_{3m-2}.
    """
    if m < 1:
        raise UnderflowError(f"Nested embedding needs m >= 1, got {m}")
    outer = list(range(3 * m - 2, 3, -3))
    indices = outer + [3] + outer[::-1]
    return [Component(i, fib_word(i)) for i in indices]


# Digrams

def digram_pairs(word: Word) -> List[Digram]:
    _check_fib_word(word)
    if len(word) % 2:
        raise PairingError(f"Digram pairing needs an even number of letters, got {len(word)}")
    pairs = [word[i:i + 2] for i in range(0, len(word), 2)]
    for index, pair in enumerate(pairs):
        if pair not in DIGRAMS:
            raise IllegalDigramError(f"Pair {index} is {pair}")
    return pairs


def _paired_fib_word(n: int) -> Word:
    if n % 3 != 1:
        raise PairingError(f"F_n has an even number of letters only for n = 1 (mod 3), got {n}")
    return fib_word(n)


def digram_frequencies(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Relative frequencies of (ab, aa, ba) among the pairs of F_n."""
    pairs = digram_pairs(_paired_fib_word(n))
    counts = Counter(pairs)
    return tuple(Fraction(counts[d], len(pairs)) for d in DIGRAMS)


@dataclass(frozen=True)
class DigramLead:
    lead: Fraction
    lag: Fraction


def digram_lead(n: int) -> Dict[Digram, DigramLead]:
    """
    How far each pair's running count gets ahead of (lead) or behind (lag)
    its final frequency while F_n is read left to right.
    """
    pairs = digram_pairs(_paired_fib_word(n))
    frequencies = dict(zip(DIGRAMS, digram_frequencies(n)))
    running = Counter()
    lead = {d: Fraction(0) for d in DIGRAMS}
    lag = {d: Fraction(0) for d in DIGRAMS}
    for read, pair in enumerate(pairs, start=1):
        running[pair] += 1
        for d in DIGRAMS:
            excess = running[d] - frequencies[d] * read
            lead[d] = max(lead[d], excess)
            lag[d] = min(lag[d], excess)
    return {d: DigramLead(lead[d], lag[d]) for d in DIGRAMS}


# Word identities

@dataclass
class Decomposition:
    parts: List[Word]
    joints: List[Word]

    def joined(self) -> Word:
        pieces = []
        for part, joint in zip(self.parts, self.joints + ['']):
            pieces.extend((part, joint))
        return ''.join(pieces)


def decompose_theorem31(n: int) -> Decomposition:
    """
    W_n = W_{n-3}(vu) W_{n-3}(vu) W_{n-6}(uv) W_{n-3}(uv) W_{n-3}, where uv
    are the last two letters of F_n.

    For n = 6 the middle part W_0 would have length -1; it is empty and the
    third joint loses its first letter.
    """
    if n < 6:
        raise UnderflowError(f"The five-part decomposition needs n >= 6, got {n}")
    uv = fib_word(n)[-2:]
    vu = uv[::-1]
    outer = trim_last_two(n - 3)
    if n == 6:
        middle, third = '', uv[1:]
    else:
        middle, third = trim_last_two(n - 6), uv
    return Decomposition([outer, outer, middle, outer, outer], [vu, vu, third, uv])


def check_lemma_32_33(n: int) -> Tuple[bool, bool, bool]:
    """
    (T_{n+1} = F_n T_{n-1}, F_n = F_{n-2} T_{n-1}, T_n = F_{n-2} F_{n-1})
    """
    if n < 3:
        raise UnderflowError(f"The identities need n >= 3, got {n}")
    return (
        swap_last_two(n + 1) == fib_word(n) + swap_last_two(n - 1),
        fib_word(n) == fib_word(n - 2) + swap_last_two(n - 1),
        swap_last_two(n) == fib_word(n - 2) + fib_word(n - 1),
    )


# Direction parity and displacement

class Parity(models.TextChoices):
    SUSTAIN = 'S', 'Sustain'
    REVERSAL = 'R', 'Reversal'


def direction_parity(n: int) -> Parity:
    """Sustain iff F_n has an even number of b's, which happens iff n = 0 (mod 3)."""
    if n < 1:
        raise UnderflowError(f"Direction parity is tabulated for n >= 1, got {n}")
    return Parity.SUSTAIN if n % 3 == 0 else Parity.REVERSAL


def parity_of_direction(direction: int) -> Parity:
    return Parity.SUSTAIN if direction > 0 else Parity.REVERSAL


@dataclass(frozen=True)
class DisplacementClass:
    magnitude: Golden
    parity: Parity

    def __str__(self) -> str:
        return f"({self.magnitude}, {self.parity.label})"


CLOSED_FORM_CLASSES = {
    0: DisplacementClass(PHI, Parity.SUSTAIN),
    1: DisplacementClass(PHI, Parity.REVERSAL),
    3: DisplacementClass(-PHI, Parity.SUSTAIN),
    4: DisplacementClass(-PHI, Parity.REVERSAL),
}


def displacement_class(n: int) -> DisplacementClass:
    """
    Final 1-D position and parity of F_n traced from zero heading +1.

    Residues 2 and 5 (mod 6) have no closed form and are traced.
    """
    if n < 1:
        raise UnderflowError(f"Displacement classes start at n = 1, got {n}")
    closed = CLOSED_FORM_CLASSES.get(n % 6)
    if closed is not None:
        return closed
    trace = trace_1d(fib_word(n))
    return DisplacementClass(trace.final_position, parity_of_direction(trace.final_direction))


@dataclass(frozen=True)
class ComponentRow:
    component: int
    initial_direction: int
    relative: Golden
    final_direction: int
    running: Golden


def track_components(m: int) -> List[ComponentRow]:
    """
    Running displacement of F_3m accumulated component by component over
    its nested embedding. A component's own class is flipped when it is
    entered heading backwards.
    """
    rows = []
    direction, running = 1, ZERO
    for component in nested_embedding(m):
        cls = displacement_class(component.index)
        relative = cls.magnitude * direction
        running = running + relative
        final = direction if cls.parity == Parity.SUSTAIN else -direction
        rows.append(ComponentRow(component.index, direction, relative, final, running))
        direction = final
    return rows


def peak_running(rows: List[ComponentRow]) -> Golden:
    return max((abs(row.running) for row in rows), default=ZERO)


def components_frame(m: int) -> pd.DataFrame:
    rows = track_components(m)
    return pd.DataFrame(
        {
            'component': [f"F_{row.component}" for row in rows],
            'initial_direction': [row.initial_direction for row in rows],
            'relative': [str(row.relative) for row in rows],
            'final_direction': [row.final_direction for row in rows],
            'running': [str(row.running) for row in rows],
            'running_value': [float(row.running) for row in rows],
        }
    )
