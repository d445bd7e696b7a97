"""Two-generator solution counts and t-Frobenius numbers."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import checked, ext_gcd
from .errors import InputError, NotCoprime


@dataclass(frozen=True)
class CoprimePair:
    a1: int
    a2: int

    def __post_init__(self) -> None:
        if self.a1 < 1 or self.a2 < 1:
            raise InputError(f"generators must be positive, got ({self.a1}, {self.a2})")
        if gcd(self.a1, self.a2) != 1:
            raise NotCoprime(f"gcd({self.a1}, {self.a2}) = {gcd(self.a1, self.a2)} != 1")
        if self.a1 >= self.a2:
            raise InputError(f"need a1 < a2, got ({self.a1}, {self.a2})")

    @classmethod
    def of(cls, a: int, b: int) -> "CoprimePair":
        """Build from an unordered pair."""
        return cls(min(a, b), max(a, b))


def count_solutions(pair: CoprimePair, n: int) -> int:
    """Number of ``(x, y) >= 0`` with ``a1*x + a2*y = n``.

    All integer solutions are ``(x0 + j*a2, y0 - j*a1)``; both coordinates stay
    nonnegative exactly for ``-floor(x0/a2) <= j <= floor(y0/a1)``.
    """
    if n < 0:
        return 0
    a1, a2 = pair.a1, pair.a2
    _, u, v = ext_gcd(a1, a2)
    x0, y0 = u * n, v * n
    return max(0, y0 // a1 + x0 // a2 + 1)


def t_frobenius(pair: CoprimePair, t: int) -> int:
    """Largest ``n`` with fewer than ``t`` nonnegative solutions, found by search.

    Scans upward and stops after ``a1*a2`` consecutive values with at least
    ``t`` solutions: shifting ``n`` by ``a1*a2`` adds exactly one solution, so
    nothing past that run can be deficient.  Negative ``n`` have no solutions,
    so the answer is ``-1`` when every ``n >= 0`` already has ``t``.
    """
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    period = pair.a1 * pair.a2
    last_deficient = -1
    run = 0
    n = 0
    while run < period:
        if count_solutions(pair, n) < t:
            last_deficient = n
            run = 0
        else:
            run += 1
        n += 1
    return checked(last_deficient, "t-Frobenius number")


def t_frobenius_formula(pair: CoprimePair, t: int) -> int:
    return t * pair.a1 * pair.a2 - pair.a1 - pair.a2
