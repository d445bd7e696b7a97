"""Representation counts ``r_{A,h}(n)`` and the sets ``(hA)^(t)``.

With ``0 in A`` a nondecreasing h-tuple from ``A`` is the same thing as a
multiplicity vector ``(x_1, ..., x_k) >= 0`` of weight ``sum x_i <= h``; the
missing summands are zeros.  The table engine counts multisets of each exact
weight ``w`` drawn from ``{a_1, ..., a_i}``:

    E_i^w[n] = E_{i-1}^w[n] + E_i^{w-1}[n - a_i]

and accumulates ``sum_{w <= h} E_k^w``.  Only the rows of the previous weight
are kept, so memory is ``O(k * h * a_k)`` and every prefix ``h' <= h`` comes
out of the same pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .core import GeneratorSet, check_cells
from .errors import InputError


def _dtype_for(cap: int):
    # x + y with x, y <= cap must not wrap before clamping.
    if cap <= 2**14:
        return np.int16
    if cap <= 2**30:
        return np.int32
    if cap <= 2**62:
        return np.int64
    return object


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RepTable:
    """Saturated counts ``min(cap, r_{A,h}(n))`` for ``n`` in ``[0, h*a_k]``."""

    h: int
    cap: int
    counts: np.ndarray

    @property
    def max_value(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> int:
        if 0 <= n < len(self.counts):
            return int(self.counts[n])
        return 0

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True, eq=False)
class MembershipSet:
    """``(hA)^(t)`` as a boolean bitmap over ``[0, M]`` with ``M = h*a_k``."""

    h: int
    t: int
    max_value: int
    members: np.ndarray

    @classmethod
    def from_elements(cls, h: int, t: int, max_value: int, elements: Iterable[int]) -> "MembershipSet":
        bits = np.zeros(max_value + 1, dtype=bool)
        for n in elements:
            if not 0 <= n <= max_value:
                raise InputError(f"element {n} outside [0, {max_value}]")
            bits[n] = True
        return cls(h, t, max_value, _frozen(bits))

    def __contains__(self, n: object) -> bool:
        return isinstance(n, (int, np.integer)) and 0 <= n <= self.max_value and bool(self.members[n])

    def __iter__(self) -> Iterator[int]:
        return (int(n) for n in np.flatnonzero(self.members))

    def __len__(self) -> int:
        return int(np.count_nonzero(self.members))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MembershipSet):
            return NotImplemented
        return self.max_value == other.max_value and np.array_equal(self.members, other.members)

    def __repr__(self) -> str:
        return f"MembershipSet(h={self.h}, t={self.t}, M={self.max_value}, members={self.to_list()})"

    def to_list(self) -> list[int]:
        return list(self)

    def max(self) -> Optional[int]:
        idx = np.flatnonzero(self.members)
        return int(idx[-1]) if len(idx) else None


def iter_rep_tables(A: GeneratorSet, h_max: int, cap: int) -> Iterator[RepTable]:
    """Yield ``rep_count_table(A, h, cap)`` for ``h = 0, 1, ..., h_max`` in one pass."""
    if h_max < 0:
        raise InputError(f"h must be nonnegative, got {h_max}")
    if cap < 1:
        raise InputError(f"cap must be positive, got {cap}")
    a_k = A.a_k
    size = check_cells(h_max, a_k) + 1
    dtype = _dtype_for(cap)

    # rows[i] holds E_{i+1}^w for the current weight w.
    rows = np.zeros((A.k, size), dtype=dtype)
    rows[:, 0] = 1
    total = np.zeros(size, dtype=dtype)
    total[0] = 1
    yield RepTable(0, cap, _frozen(total[:1].copy()))

    for w in range(1, h_max + 1):
        hi = w * a_k + 1
        prev = None  # E_0^w is zero for w >= 1
        for i, a in enumerate(A.nonzero):
            row = rows[i]
            shifted = np.zeros(hi, dtype=dtype)
            shifted[a:hi] = row[: hi - a]
            if prev is not None:
                shifted += prev[:hi]
            np.minimum(shifted, cap, out=shifted)
            row[:hi] = shifted
            row[hi:] = 0
            prev = row
        total[:hi] += prev[:hi]
        np.minimum(total[:hi], cap, out=total[:hi])
        yield RepTable(w, cap, _frozen(total[:hi].copy()))


def rep_count_table(A: GeneratorSet, h: int, cap: int) -> RepTable:
    """Saturated representation counts ``min(cap, r_{A,h}(n))`` over ``[0, h*a_k]``."""
    table = None
    for table in iter_rep_tables(A, h, cap):
        pass
    return table


def exact_rep_count(A: GeneratorSet, h: int, n: int) -> int:
    """Exact ``r_{A,h}(n)`` in arbitrary precision.

    Independent of the table engine: a weight-by-value table over ``[0, n]``
    built element by element.
    """
    if h < 0:
        raise InputError(f"h must be nonnegative, got {h}")
    if n < 0 or n > h * A.a_k:
        return 0
    check_cells(1, n)
    weights = min(h, n // A.nonzero[0])
    # by_weight[w][v]: multiplicity vectors of weight exactly w and value v
    by_weight = [[0] * (n + 1) for _ in range(weights + 1)]
    by_weight[0][0] = 1
    for a in A.nonzero:
        for w in range(1, weights + 1):
            cur, lower = by_weight[w], by_weight[w - 1]
            for v in range(a, n + 1):
                if lower[v - a]:
                    cur[v] += lower[v - a]
    return sum(row[n] for row in by_weight)


def membership_from_table(table: RepTable, t: int) -> MembershipSet:
    if table.cap < t:
        raise InputError(f"table saturated at {table.cap} cannot decide threshold t = {t}")
    return MembershipSet(table.h, t, table.max_value, _frozen(table.counts >= t))


def membership_set(A: GeneratorSet, h: int, t: int) -> MembershipSet:
    """``(hA)^(t) = {n : r_{A,h}(n) >= t}``."""
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    return membership_from_table(rep_count_table(A, h, t), t)


def iter_membership_sets(A: GeneratorSet, h_max: int, t: int) -> Iterator[MembershipSet]:
    """Yield ``membership_set(A, h, t)`` for ``h = 0, ..., h_max``."""
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    for table in iter_rep_tables(A, h_max, t):
        yield membership_from_table(table, t)
