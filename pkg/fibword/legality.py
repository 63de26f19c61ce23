"""
Legality
Decides whether an embedded word is a factor of the infinite Fibonacci word
by iterated desubstitution, with a substring oracle for cross-checking.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

from .conf import fibword_settings
from .exceptions import OracleSizeError
from .words import Word, _check_fib_word, context_length, factor_set, fibonacci_prefix

logger = logging.getLogger(__name__)

BASE_LENGTH = 4


@dataclass(frozen=True, order=True)
class BoundedFactor:
    """
    A word with unknown letters possibly beyond either end.

    An open end may continue with any letters; a closed end is claimed to
    coincide with an image boundary. In the infinite word those are the
    positions holding an a, so a closed left end starts on an a and a closed
    right end is followed by one. Preimages are always open at both ends.
    """
    word: Word
    left_open: bool = True
    right_open: bool = True

    def __str__(self) -> str:
        left = '...' if self.left_open else '|'
        right = '...' if self.right_open else '|'
        return f"{left}{self.word}{right}"


@dataclass(frozen=True)
class Illegal:
    word: Word
    index: int
    reason: str


@dataclass(frozen=True)
class DesubOutcome:
    """Either an Illegal verdict or a nonempty tuple of preimages."""
    preimages: Tuple[BoundedFactor, ...] = ()
    illegal: Optional[Illegal] = None
    pruned: Tuple[Illegal, ...] = ()

    @property
    def is_illegal(self) -> bool:
        return self.illegal is not None


@dataclass
class LegalityReport:
    factor: BoundedFactor
    legal: bool
    rounds: int
    frontiers: List[List[BoundedFactor]] = field(default_factory=list)
    pruned: List[Illegal] = field(default_factory=list)
    base_word: Optional[Word] = None


def forbidden_at(word: Word) -> Optional[Tuple[int, str]]:
    """First occurrence of bb or aaa as (index, pattern)."""
    hits = [(word.find(p), p) for p in ('bb', 'aaa')]
    hits = [h for h in hits if h[0] >= 0]
    return min(hits) if hits else None


def scan_forbidden(word: Word) -> Optional[int]:
    _check_fib_word(word)
    hit = forbidden_at(word)
    return hit[0] if hit else None


@lru_cache(maxsize=1)
def base_factors() -> FrozenSet[Word]:
    """Every legal word of length <= 4, generated from the Fibonacci prefix."""
    legal = {''}
    for length in range(1, BASE_LENGTH + 1):
        legal |= factor_set(None, length)
    return frozenset(legal)


def _screen(factor: BoundedFactor) -> Optional[Illegal]:
    hit = forbidden_at(factor.word)
    if hit:
        return Illegal(factor.word, hit[0], f"{hit[1]} at {hit[0]}")
    return None


def desubstitute(factor: BoundedFactor) -> DesubOutcome:
    """
    Invert theta once.

    Every "ab" maps back to a and every other a maps back to b. A leading b
    on an open left end is the tail of an image of a whose head lies outside.
    A trailing unpaired a on an open right end is either a whole image of b
    or the head of a cut-off image of a; the second case drops the letter.
    """
    word = factor.word
    screened = _screen(factor)
    if screened:
        return DesubOutcome(illegal=screened)

    letters = []
    i, n = 0, len(word)
    if word.startswith('b'):
        if not factor.left_open:
            return DesubOutcome(illegal=Illegal(word, 0, "closed factor begins with b"))
        letters.append('a')
        i = 1
    trailing = False
    while i < n:
        if word[i] == 'b':
            return DesubOutcome(illegal=Illegal(word, i, f"unpaired b at {i}"))
        if i + 1 < n and word[i + 1] == 'b':
            letters.append('a')
            i += 2
        elif i + 1 < n:
            letters.append('b')
            i += 1
        else:
            trailing = True
            i += 1
    core = ''.join(letters)

    if not trailing:
        candidates = [core]
    elif not factor.right_open:
        candidates = [core + 'b']
    else:
        # core + 'b' is only needed when it is shorter; otherwise core alone decides
        candidates = [core + 'b', core] if len(core) + 1 < n else [core]

    preimages, pruned = [], []
    for candidate in candidates:
        preimage = BoundedFactor(candidate)
        reason = _screen(preimage)
        if reason:
            pruned.append(reason)
        else:
            preimages.append(preimage)

    if not preimages:
        return DesubOutcome(illegal=pruned[0], pruned=tuple(pruned))
    if pruned:
        logger.debug("Pruned %s while desubstituting %s", [p.word for p in pruned], factor)
    return DesubOutcome(preimages=tuple(preimages), pruned=tuple(pruned))


def legality_report(factor: BoundedFactor) -> LegalityReport:
    """
    Desubstitute round by round until a branch reaches a legal base word
    (length <= 4) or every branch dies. A factor with a closed end always
    takes one round first, since the base table ignores boundaries.
    """
    _check_fib_word(factor.word)
    report = LegalityReport(factor=factor, legal=False, rounds=0)
    frontier = [factor]
    base = base_factors()
    while frontier:
        report.frontiers.append(frontier)
        successors = set()
        desubstituted = False
        for current in frontier:
            screened = _screen(current)
            if screened:
                report.pruned.append(screened)
                continue
            if len(current.word) <= BASE_LENGTH and current.left_open and current.right_open:
                if current.word in base:
                    report.legal = True
                    report.base_word = current.word
                    return report
                continue
            outcome = desubstitute(current)
            desubstituted = True
            report.pruned.extend(outcome.pruned)
            if outcome.is_illegal and not outcome.pruned:
                report.pruned.append(outcome.illegal)
            successors.update(outcome.preimages)
        if desubstituted:
            report.rounds += 1
        if not successors:
            break
        frontier = sorted(successors)
        logger.debug("Round %d for %s: %s", report.rounds, factor, [str(f) for f in frontier])
    return report


def desubstitution_trace(factor: BoundedFactor) -> Tuple[List[List[BoundedFactor]], int]:
    """Branch lists round by round, and the number of rounds the verdict took."""
    report = legality_report(factor)
    return report.frontiers, report.rounds


def is_legal_factor(factor: BoundedFactor) -> bool:
    return legality_report(factor).legal


def oracle_is_factor(word: Word) -> bool:
    """Substring test against a Fibonacci prefix of length max(200, 20|w|)."""
    cap = fibword_settings.ORACLE_CAP
    if len(word) > cap:
        raise OracleSizeError(f"Oracle words are capped at {cap} letters, got {len(word)}")
    return word in fibonacci_prefix(context_length(len(word)))
