"""Exhaustive reference implementations.

Nothing here touches :mod:`hfold.repcount`; the point is to have a second,
deliberately naive route to the same numbers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import GeneratorSet
from .errors import BudgetExceeded
from .repcount import MembershipSet


@dataclass(frozen=True)
class OracleBudget:
    max_k: int = 5
    max_weight: int = 12


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class RepresentationTuple:
    multiplicities: tuple[int, ...]
    weight: int
    value: int

    @classmethod
    def of(cls, A: GeneratorSet, xs: tuple[int, ...]) -> "RepresentationTuple":
        return cls(xs, sum(xs), sum(x * a for x, a in zip(xs, A.nonzero)))


def _check(A: GeneratorSet, weight_bound: int, budget: OracleBudget) -> None:
    if A.k > budget.max_k:
        raise BudgetExceeded(f"oracle: k = {A.k} exceeds max_k = {budget.max_k}")
    if weight_bound > budget.max_weight:
        raise BudgetExceeded(f"oracle: weight bound {weight_bound} exceeds max_weight = {budget.max_weight}")


def _all_vectors(k: int, weight_bound: int) -> Iterator[tuple[int, ...]]:
    """Every ``(x_1..x_k) >= 0`` with ``sum <= weight_bound``, lexicographic order."""
    if k == 0:
        yield ()
        return
    for x in range(weight_bound + 1):
        for rest in _all_vectors(k - 1, weight_bound - x):
            yield (x,) + rest


def enumerate_representations(
    A: GeneratorSet, weight_bound: int, n: int, budget: OracleBudget = DEFAULT_BUDGET
) -> list[RepresentationTuple]:
    """All multiplicity vectors of value ``n`` and weight at most ``weight_bound``."""
    _check(A, weight_bound, budget)
    out = []
    for xs in _all_vectors(A.k, weight_bound):
        value = sum(x * a for x, a in zip(xs, A.nonzero))
        if value == n:
            out.append(RepresentationTuple(xs, sum(xs), value))
    return out


def brute_force_counts(A: GeneratorSet, h: int, budget: OracleBudget = DEFAULT_BUDGET) -> Counter:
    """Exact ``r_{A,h}(n)`` for every ``n``, by tallying every vector once."""
    _check(A, h, budget)
    tally: Counter = Counter()
    for xs in _all_vectors(A.k, h):
        tally[sum(x * a for x, a in zip(xs, A.nonzero))] += 1
    return tally


def brute_force_membership(
    A: GeneratorSet, h: int, t: int, budget: OracleBudget = DEFAULT_BUDGET,
    counts: Optional[Counter] = None,
) -> MembershipSet:
    """``(hA)^(t)`` from raw enumeration; pass ``counts`` to reuse one tally for several ``t``."""
    if counts is None:
        counts = brute_force_counts(A, h, budget)
    return MembershipSet.from_elements(h, t, h * A.a_k, (n for n, c in counts.items() if c >= t))


def brute_force_count_solutions(a1: int, a2: int, n: int) -> int:
    """Nonnegative solutions of ``a1*x + a2*y = n`` by scanning ``x``."""
    if n < 0:
        return 0
    return sum(1 for x in range(n // a1 + 1) if (n - a1 * x) % a2 == 0)
