"""Domain types, input normalization and closed-form thresholds.

Everything downstream works on a canonical generator set
``0 = a_0 < a_1 < ... < a_k`` with ``gcd(a_1, ..., a_k) = 1``.  Arbitrary
integer inputs are brought into that form by an affine map, which is kept so
results can be translated back.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from .errors import FewerThanTwoDistinct, InputError, KTooSmall, OverflowBudgetExceeded

INT_LIMIT = 2**63 - 1
DEFAULT_CELL_BUDGET = 2**24
CELL_BUDGET_ENV = "HFOLD_CELL_BUDGET"

_budget_override: ContextVar[Optional[int]] = ContextVar("cell_budget", default=None)


@contextmanager
def cell_budget_override(budget: int) -> Iterator[None]:
    """Temporarily replace the cell budget in the current context."""
    if budget <= 0:
        raise InputError(f"cell budget must be positive, got {budget}")
    token = _budget_override.set(budget)
    try:
        yield
    finally:
        _budget_override.reset(token)


def cell_budget() -> int:
    """Largest permitted ``h * a_k`` for one table.

    An active :func:`cell_budget_override` wins, then ``$HFOLD_CELL_BUDGET``.
    """
    override = _budget_override.get()
    if override is not None:
        return override
    raw = os.environ.get(CELL_BUDGET_ENV)
    if raw is None:
        return DEFAULT_CELL_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{CELL_BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{CELL_BUDGET_ENV} must be positive, got {value}")
    return value


def checked(value: int, what: str = "value", limit: int = INT_LIMIT) -> int:
    """Return ``value`` unchanged, or raise if it leaves the signed 64-bit range."""
    if value > limit or value < -limit - 1:
        raise OverflowBudgetExceeded(f"{what} = {value} exceeds the integer limit {limit}")
    return value


def check_cells(h: int, a_k: int, budget: Optional[int] = None) -> int:
    """Validate that a table over ``[0, h * a_k]`` fits the cell budget; return ``h * a_k``."""
    if budget is None:
        budget = cell_budget()
    cells = checked(h * a_k, "h*a_k")
    if cells > budget:
        raise OverflowBudgetExceeded(f"h*a_k = {cells} exceeds the cell budget {budget}")
    return cells


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b)`` and ``g >= 0``."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        return -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """Fold :func:`ext_gcd` left to right: ``sum(c*x) == g`` for the returned ``(g, c)``."""
    if not values:
        raise InputError("bezout needs at least one value")
    g, coeffs = values[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for x in values[1:]:
        g, u, v = ext_gcd(g, x)
        coeffs = [u * c for c in coeffs] + [v]
    return g, coeffs


@dataclass(frozen=True)
class GeneratorSet:
    """A canonical finite set ``{0 = a_0 < a_1 < ... < a_k}`` with gcd 1."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        els = tuple(int(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        if len(els) < 2:
            raise FewerThanTwoDistinct(f"need at least two elements, got {els}")
        if els[0] != 0:
            raise InputError(f"smallest element must be 0, got {els[0]}")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise InputError(f"elements must be strictly increasing: {els}")
        if reduce(gcd, els[1:]) != 1:
            raise InputError(f"nonzero elements must have gcd 1: {els}")

    @property
    def k(self) -> int:
        return len(self.elements) - 1

    @property
    def a_k(self) -> int:
        return self.elements[-1]

    @property
    def nonzero(self) -> tuple[int, ...]:
        """``(a_1, ..., a_k)``."""
        return self.elements[1:]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def require_theorem_shape(self) -> None:
        if self.k < 2:
            raise KTooSmall(f"k = {self.k}; the structure results need k >= 2")


@dataclass(frozen=True)
class AffineMap:
    """Maps a normalized h-fold sum ``s`` to ``scale*s + h*offset_per_summand``."""

    scale: int = 1
    offset_per_summand: int = 0

    def apply(self, value: int, h: int) -> int:
        return self.scale * value + h * self.offset_per_summand

    def apply_element(self, value: int) -> int:
        return self.apply(value, 1)

    @property
    def is_identity(self) -> bool:
        return self.scale == 1 and self.offset_per_summand == 0


@dataclass(frozen=True)
class ThresholdReport:
    h_paper: int
    h_nathanson: int
    h_wcc: Optional[int]
    c_prime: int
    t: int
    h_empirical: Optional[int] = None

    def with_empirical(self, h_empirical: int) -> "ThresholdReport":
        return replace(self, h_empirical=h_empirical)


def normalize(raw: Iterable[int]) -> tuple[GeneratorSet, AffineMap]:
    """Shift by the minimum and divide by the gcd of the residuals.

    >>> normalize([6, 10, 14])
    (GeneratorSet(elements=(0, 1, 2)), AffineMap(scale=4, offset_per_summand=6))
    """
    distinct = sorted({int(x) for x in raw})
    if len(distinct) < 2:
        raise FewerThanTwoDistinct(f"need at least two distinct integers, got {distinct}")
    lo = distinct[0]
    residuals = [x - lo for x in distinct]
    g = reduce(gcd, residuals[1:])
    return GeneratorSet(tuple(r // g for r in residuals)), AffineMap(g, lo)


def cprime(A: GeneratorSet, t: int) -> int:
    """Anchor constant ``sum_{i=1}^{k-1} a_i * (t*a_{i+1} - 1)``."""
    A.require_theorem_shape()
    _require_t(t)
    a = A.elements
    total = sum(a[i] * (t * a[i + 1] - 1) for i in range(1, A.k))
    return checked(total, "c'_t")


def thresholds(A: GeneratorSet, t: int) -> ThresholdReport:
    """Closed-form stabilization bounds for ``(hA)^(t)``.

    ``h_paper`` is the improved bound, ``h_nathanson`` the earlier cubic one,
    and ``h_wcc`` the ``t = 1`` bound ``sum_{i>=2} a_i - k`` (absent for ``t > 1``).
    """
    A.require_theorem_shape()
    _require_t(t)
    a, k = A.elements, A.k
    h_paper = checked(sum(t * a[i] - 1 for i in range(2, k + 1)) - 1, "h_t")
    h_nathanson = checked((k - 1) * checked(t * a[k] - 1) * a[k] + 1, "cubic bound")
    h_wcc = sum(a[2:]) - k if t == 1 else None
    return ThresholdReport(
        h_paper=h_paper,
        h_nathanson=h_nathanson,
        h_wcc=h_wcc,
        c_prime=cprime(A, t),
        t=t,
    )


def _require_t(t: int) -> None:
    if t < 1:
        raise InputError(f"t must be a positive integer, got {t}")
