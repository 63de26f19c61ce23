"""
Rewriting Core
Finite-alphabet substitutions, Fibonacci word constructors and string-level queries.

Words are plain Python strings: immutable, indexable, compared letterwise.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Set, Tuple

from .exceptions import (
    AlphabetMismatchError,
    InsufficientContextError,
    NoAbaPrefixError,
    UnderflowError,
)

logger = logging.getLogger(__name__)

Letter = str
Word = str

FIB_ALPHABET = ('a', 'b')


class Substitution:
    """
    Letter -> word map over a declared alphabet.

    The alphabet order is the order the images were declared in; it is the
    row/column order of the incidence matrix.
    """

    def __init__(self, images: Dict[Letter, Word], name: str = ''):
        if not images:
            raise AlphabetMismatchError("A substitution needs at least one letter")
        self.alphabet: Tuple[Letter, ...] = tuple(images)
        for letter, image in images.items():
            if len(letter) != 1:
                raise AlphabetMismatchError(f"Letters are single symbols, got '{letter}'")
            if not image:
                raise AlphabetMismatchError(f"Image of '{letter}' is empty")
            foreign = set(image) - set(self.alphabet)
            if foreign:
                raise AlphabetMismatchError(
                    f"Image of '{letter}' uses letters outside the alphabet: {''.join(sorted(foreign))}"
                )
        self.images = dict(images)
        self.name = name
        self._table = str.maketrans(self.images)

    def check_word(self, word: Word) -> None:
        foreign = set(word) - set(self.alphabet)
        if foreign:
            raise AlphabetMismatchError(
                f"Word uses letters outside {{{', '.join(self.alphabet)}}}: {''.join(sorted(foreign))}"
            )

    def apply(self, word: Word) -> Word:
        """Concatenate the images of the letters of word, in order."""
        self.check_word(word)
        return word.translate(self._table)

    def iterate(self, seed: Word, n: int) -> Word:
        word = seed
        for _ in range(n):
            word = self.apply(word)
        return word

    def __repr__(self) -> str:
        rules = ', '.join(f"{k}->{v}" for k, v in self.images.items())
        return f"Substitution({self.name or rules})"


THETA = Substitution({'a': 'ab', 'b': 'a'}, name='theta')
OMEGA = Substitution({'F': 'FLFRFRFLF', 'L': 'L', 'R': 'R'}, name='omega')
ZIGZAG = Substitution({'F': 'FLFRFRFFLFLFRF', 'L': 'L', 'R': 'R'}, name='zigzag')

BUILTIN_SUBSTITUTIONS = {s.name: s for s in (THETA, OMEGA, ZIGZAG)}


def apply(subst: Substitution, word: Word) -> Word:
    return subst.apply(word)


def iterate(subst: Substitution, seed: Word, n: int) -> Word:
    if n < 0:
        raise UnderflowError(f"Iteration counts start at 0, got {n}")
    return subst.iterate(seed, n)


def parse_substitution(text: str) -> Substitution:
    """
    Parse "a:ab,b:a" into a Substitution, or look up a builtin by name.
    """
    text = text.strip()
    if text in BUILTIN_SUBSTITUTIONS:
        return BUILTIN_SUBSTITUTIONS[text]
    images = {}
    for rule in text.split(','):
        letter, sep, image = rule.partition(':')
        if not sep:
            raise AlphabetMismatchError(f"Expected 'letter:image', got '{rule}'")
        images[letter.strip()] = image.strip()
    return Substitution(images, name=text)


def _check_fib_word(word: Word) -> None:
    foreign = set(word) - set(FIB_ALPHABET)
    if foreign:
        raise AlphabetMismatchError(f"Not a word over {{a, b}}: {''.join(sorted(foreign))}")


@lru_cache(maxsize=None)
def fib_number(n: int) -> int:
    """Fib(0) = 0, Fib(1) = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=64)
def fib_word(n: int) -> Word:
    """F_n = theta^n(a)."""
    if n < 0:
        raise UnderflowError(f"Fibonacci words are indexed from 0, got {n}")
    if n == 0:
        return 'a'
    return THETA.apply(fib_word(n - 1))


def fib_word_concat(n: int) -> Word:
    """F_n built from F_n = F_{n-1} F_{n-2}, F_0 = a, F_1 = ab."""
    if n < 0:
        raise UnderflowError(f"Fibonacci words are indexed from 0, got {n}")
    previous, current = 'a', 'ab'
    if n == 0:
        return previous
    for _ in range(n - 1):
        previous, current = current, current + previous
    return current


def fibonacci_prefix(min_length: int) -> Word:
    """Shortest F_k with at least min_length letters."""
    n = 0
    while fib_number(n + 2) < min_length:
        n += 1
    return fib_word(n)


def context_length(length: int) -> int:
    return max(200, 20 * length)


def word_stats(word: Word) -> Tuple[int, int, int]:
    """(count_a, count_b, length)"""
    _check_fib_word(word)
    return word.count('a'), word.count('b'), len(word)


def trim_last_two(n: int) -> Word:
    """W_n: F_n without its last two letters."""
    if n < 1:
        raise UnderflowError("F_0 has a single letter; W_n needs n >= 1")
    return fib_word(n)[:-2]


def swap_last_two(n: int) -> Word:
    """T_n: F_n with its last two letters exchanged."""
    if n < 1:
        raise UnderflowError("F_0 has a single letter; T_n needs n >= 1")
    word = fib_word(n)
    return word[:-2] + word[-1] + word[-2]


def strip_leading_aba(n: int) -> Word:
    """F*_n: F_n without its leading aba."""
    if n < 2:
        raise NoAbaPrefixError(f"F_{n} does not start with aba")
    return fib_word(n)[3:]


def is_palindrome(word: Word) -> bool:
    return word == word[::-1]


def factor_set(n_source: Optional[int], length: int) -> Set[Word]:
    """
    Distinct factors of the given length in F_{n_source}.

    Args:
        n_source: index of the source prefix, or None for the shortest
            prefix that satisfies the context margin
        length: factor length

    Returns:
        Set of factors
    """
    if length < 1:
        raise InsufficientContextError("Factor length must be positive")
    needed = context_length(length)
    prefix = fibonacci_prefix(needed) if n_source is None else fib_word(n_source)
    if len(prefix) < needed:
        raise InsufficientContextError(
            f"F_{n_source} has {len(prefix)} letters; factors of length {length} need {needed}"
        )
    return {prefix[i:i + length] for i in range(len(prefix) - length + 1)}


def factor_complexity(max_length: int) -> List[int]:
    """Number of distinct factors for each length 1..max_length."""
    return [len(factor_set(None, length)) for length in range(1, max_length + 1)]


def repetition_exponent(prefix: Word, block: Word) -> int:
    """Largest k such that block repeated k times occurs in prefix."""
    if not block:
        return 0
    k = 0
    while block * (k + 1) in prefix:
        k += 1
    return k


def max_power(prefix: Word, max_block: int) -> Tuple[Word, int]:
    """
    Highest repetition found in prefix with blocks of at most max_block letters.

    Ties go to the shorter block, then to the earlier occurrence.
    """
    best_block, best_exponent = '', 0
    for size in range(1, max_block + 1):
        for start in range(len(prefix) - size + 1):
            block = prefix[start:start + size]
            k = 1
            while prefix[start + k * size:start + (k + 1) * size] == block:
                k += 1
            if k > best_exponent:
                best_block, best_exponent = block, k
    logger.debug("max_power over %d letters: %r^%d", len(prefix), best_block, best_exponent)
    return best_block, best_exponent
