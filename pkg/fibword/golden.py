"""
Golden Ring Arithmetic
Exact values of the form (p*phi + q) / 2 for integers p and q
"""
import math
from typing import Tuple


PHI_FLOAT = (1 + math.sqrt(5)) / 2


def sign_sqrt5(a: int, b: int) -> int:
    """
    Sign of a + b*sqrt(5) for integers a and b.

    When a and b disagree in sign the magnitudes are compared through
    a*a against 5*b*b, which can never tie because sqrt(5) is irrational.
    """
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    if a * a > 5 * b * b:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


class Golden:
    """
    Exact element of the golden ring, value (p*phi + q) / 2.

    One-dimensional trace positions are always m*phi + k/2, i.e. p = 2m and
    q = k; odd p only appears for tile midpoints (phi/2).
    """

    __slots__ = ('p', 'q')

    def __init__(self, p: int = 0, q: int = 0):
        self.p = p
        self.q = q

    @classmethod
    def from_parts(cls, m: int = 0, k: int = 0) -> 'Golden':
        """Build m*phi + k/2."""
        return cls(2 * m, k)

    @classmethod
    def from_int(cls, value: int) -> 'Golden':
        return cls(0, 2 * value)

    # arithmetic

    def __add__(self, other: 'Golden') -> 'Golden':
        if not isinstance(other, Golden):
            return NotImplemented
        return Golden(self.p + other.p, self.q + other.q)

    def __sub__(self, other: 'Golden') -> 'Golden':
        if not isinstance(other, Golden):
            return NotImplemented
        return Golden(self.p - other.p, self.q - other.q)

    def __neg__(self) -> 'Golden':
        return Golden(-self.p, -self.q)

    def __mul__(self, factor: int) -> 'Golden':
        if not isinstance(factor, int):
            return NotImplemented
        return Golden(self.p * factor, self.q * factor)

    __rmul__ = __mul__

    def __abs__(self) -> 'Golden':
        return -self if self.sign() < 0 else self

    # comparison

    def sign(self) -> int:
        # 4 * value = (p + 2q) + p*sqrt(5)
        return sign_sqrt5(self.p + 2 * self.q, self.p)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Golden):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __lt__(self, other: 'Golden') -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: 'Golden') -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: 'Golden') -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: 'Golden') -> bool:
        return (self - other).sign() >= 0

    # conversion

    def __float__(self) -> float:
        return (self.p * PHI_FLOAT + self.q) / 2

    def parts(self) -> Tuple[int, int]:
        """(m, k) with value m*phi + k/2; only defined for even p."""
        if self.p % 2:
            raise ValueError(f"{self!r} has a half multiple of phi")
        return self.p // 2, self.q

    def __str__(self) -> str:
        """m*phi+k/2, dropping a zero term and a unit coefficient."""
        if self.p == 0:
            return str(self.q // 2) if self.q % 2 == 0 else f"{self.q}/2"
        if self.p in (2, -2):
            m = 'phi' if self.p > 0 else '-phi'
        else:
            m = f"{self.p // 2}*phi" if self.p % 2 == 0 else f"{self.p}/2*phi"
        if self.q == 0:
            return m
        op = '-' if self.q < 0 else '+'
        return f"{m}{op}{abs(self.q)}/2"

    def __repr__(self) -> str:
        return f"Golden({self.p}, {self.q})"


ZERO = Golden(0, 0)
HALF = Golden(0, 1)
ONE = Golden(0, 2)
PHI = Golden(2, 0)
HALF_PHI = Golden(1, 0)
