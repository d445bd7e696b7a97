"""Fringe-interval-fringe structure of ``(hA)^(t)``.

A set ``S`` inside ``[0, M]`` is written as ``C | [c, M - d] | (M - D)`` where
``[c, M - d]`` is one maximal run of consecutive members and the fringes hold
everything else.  For ``h`` at or above the stabilization threshold the
quadruple ``(C, c, d, D)`` no longer depends on ``h``; this module computes
the decomposition, checks that stability on a finite window of ``h``, and
builds the explicit representation witnesses used to pin the central run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import GeneratorSet, ThresholdReport, bezout, check_cells, thresholds
from .errors import AnchorNotMember, EmptySet, InputError, NTooSmall, RangeError, WitnessFailure
from .repcount import MembershipSet, iter_membership_sets


@dataclass(frozen=True)
class Decomposition:
    M: int
    c: int
    d: int
    C: tuple[int, ...]
    D: tuple[int, ...]

    def members(self, M: Optional[int] = None) -> list[int]:
        """The reconstructed set ``C | [c, M-d] | (M-D)``, sorted, for a given ``M``."""
        if M is None:
            M = self.M
        out = set(self.C)
        out.update(range(self.c, M - self.d + 1))
        out.update(M - x for x in self.D)
        return sorted(out)

    def diff(self, S: MembershipSet) -> tuple[list[int], list[int]]:
        """``(missing, extra)``: members of ``S`` not reconstructed, and the converse."""
        rebuilt = self.members(S.max_value)
        bits = S.members
        in_range = [n for n in rebuilt if 0 <= n <= S.max_value]
        extra = [n for n in rebuilt if not 0 <= n <= S.max_value]
        mask = np.zeros(S.max_value + 1, dtype=bool)
        mask[in_range] = True
        missing = np.flatnonzero(bits & ~mask).tolist()
        extra = sorted(extra + np.flatnonzero(mask & ~bits).tolist())
        return missing, extra

    def has_interval(self, M: int) -> bool:
        return self.c <= M - self.d

    def reconstructs(self, S: MembershipSet) -> bool:
        """True when ``S`` equals the reconstruction and the central run is nonempty.

        An empty ``[c, M-d]`` leaves only fringes, which is not the structure
        being described even if the sets happen to coincide.
        """
        if not self.has_interval(S.max_value):
            return False
        missing, extra = self.diff(S)
        return not missing and not extra

    @property
    def fringe_key(self) -> tuple:
        """The h-independent part of the decomposition."""
        return (self.C, self.c, self.d, self.D)


def _runs(bits: np.ndarray) -> list[tuple[int, int]]:
    padded = np.concatenate(([False], bits, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def decompose(S: MembershipSet, anchor: Optional[int] = None) -> Decomposition:
    """Split ``S`` around its central run.

    The central run is the maximal run containing ``anchor`` when one is
    given, otherwise the longest run (leftmost on ties).
    """
    runs = _runs(S.members)
    if not runs:
        raise EmptySet(f"(hA)^(t) with h={S.h}, t={S.t} is empty")
    if anchor is not None:
        if anchor not in S:
            raise AnchorNotMember(f"anchor {anchor} is not a member of the set")
        lo, hi = next(r for r in runs if r[0] <= anchor <= r[1])
    else:
        lo, hi = max(runs, key=lambda r: (r[1] - r[0], -r[0]))
    M = S.max_value
    members = S.to_list()
    C = tuple(n for n in members if n <= lo - 2)
    D = tuple(sorted(M - n for n in members if n >= hi + 2))
    return Decomposition(M=M, c=lo, d=M - hi, C=C, D=D)


@dataclass(frozen=True)
class VerificationReport:
    A: GeneratorSet
    thresholds: ThresholdReport
    stable: Optional[Decomposition]
    checked_range: tuple[int, int]
    passed: bool
    first_failure: Optional[int] = None
    missing: tuple[int, ...] = ()
    extra: tuple[int, ...] = ()
    anchor_interval_ok: bool = True
    cprime_member_ok: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def default_horizon(A: GeneratorSet) -> int:
    return 2 * A.a_k + 2


class _Stability:
    """Membership sets over ``[0, h_paper + horizon]`` from one table pass."""

    def __init__(self, A: GeneratorSet, t: int, horizon: Optional[int]):
        A.require_theorem_shape()
        if horizon is None:
            horizon = default_horizon(A)
        if horizon < 1:
            raise InputError(f"horizon must be positive, got {horizon}")
        self.A, self.t, self.horizon = A, t, horizon
        self.thresholds = thresholds(A, t)
        self.h_lo = self.thresholds.h_paper
        self.h_hi = self.h_lo + horizon
        check_cells(self.h_hi, A.a_k)
        self.sets = list(iter_membership_sets(A, self.h_hi, t))

    def report(self) -> VerificationReport:
        A, th = self.A, self.thresholds
        cp, a_k = th.c_prime, A.a_k
        base = self.sets[self.h_lo]
        window = range(max(0, cp - a_k + 1), cp)
        anchor_ok = all(n in base for n in window)
        cprime_ok = cp in self.sets[self.h_lo + 1]
        rng = (self.h_lo, self.h_hi)
        notes = []
        if not anchor_ok:
            notes.append(f"[{cp - a_k + 1}, {cp - 1}] not contained in (h_t A)^(t)")
        if not cprime_ok:
            notes.append(f"c'_t = {cp} not in ((h_t+1)A)^(t)")
        if cp - 1 not in base:
            return VerificationReport(A, th, None, rng, False, self.h_lo,
                                      anchor_interval_ok=anchor_ok, cprime_member_ok=cprime_ok,
                                      notes=tuple(notes))
        stable = decompose(base, anchor=cp - 1)
        for h in range(self.h_lo, self.h_hi + 1):
            missing, extra = stable.diff(self.sets[h])
            if missing or extra or not stable.has_interval(self.sets[h].max_value):
                return VerificationReport(A, th, stable, rng, False, h, tuple(missing), tuple(extra),
                                          anchor_ok, cprime_ok, tuple(notes))
        return VerificationReport(A, th, stable, rng, anchor_ok and cprime_ok, None,
                                  anchor_interval_ok=anchor_ok, cprime_member_ok=cprime_ok,
                                  notes=tuple(notes))

    def empirical(self, report: VerificationReport) -> Optional[int]:
        if not report.passed:
            return None
        h0 = self.h_lo
        while h0 > 0 and report.stable.reconstructs(self.sets[h0 - 1]):
            h0 -= 1
        return h0


def verify_theorem(A: GeneratorSet, t: int, horizon: Optional[int] = None) -> VerificationReport:
    """Check that one decomposition describes ``(hA)^(t)`` for every ``h`` in
    ``[h_paper, h_paper + horizon]``.

    The decomposition is taken at ``h_paper`` around the anchor ``c'_t - 1``.
    The report also records whether ``[c'_t - a_k + 1, c'_t - 1]`` lies in the
    set at ``h_paper`` and whether ``c'_t`` is a member at ``h_paper + 1``;
    either failing makes the report fail.
    """
    return _Stability(A, t, horizon).report()


def empirical_threshold(A: GeneratorSet, t: int, horizon: Optional[int] = None) -> Optional[int]:
    """Smallest ``h0 <= h_paper`` from which the stable decomposition holds
    through ``h_paper + horizon``; ``None`` if it does not even hold from ``h_paper``.
    """
    scan = _Stability(A, t, horizon)
    return scan.empirical(scan.report())


def stability(A: GeneratorSet, t: int, horizon: Optional[int] = None) -> tuple[VerificationReport, Optional[int]]:
    """:func:`verify_theorem` and :func:`empirical_threshold` sharing one table pass."""
    scan = _Stability(A, t, horizon)
    report = scan.report()
    return report, scan.empirical(report)


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    t: int
    verification: VerificationReport
    h_paper: int
    expected_h: int
    c: Optional[int]
    expected_c: int
    below_h: int
    below_max: Optional[int]
    below_bound: int
    below_reconstructs: bool

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "h_paper": self.h_paper == self.expected_h,
            "c": self.c == self.expected_c,
            "below_bound": self.below_max is None or self.below_max <= self.below_bound < self.expected_c,
            "fails_below": not self.below_reconstructs,
        }

    @property
    def passed(self) -> bool:
        return self.verification.passed and all(self.checks.values())


def verify_optimality(n: int, t: int, horizon: Optional[int] = None) -> OptimalityReport:
    """Sharpness of the threshold on ``A = {0, n, n+1}``.

    Expects ``h_paper = t(n+1) - 2`` and a stable ``c = t*n*(n+1) - 2n``, while at
    ``h_paper - 1`` every member is at most ``t*n*(n+1) - 2(n+1)``, below ``c``.
    """
    if n < 3:
        raise NTooSmall(f"n = {n}; the optimality family needs n >= 3")
    A = GeneratorSet((0, n, n + 1))
    scan = _Stability(A, t, horizon)
    report = scan.report()
    hp = scan.h_lo
    below = scan.sets[hp - 1]
    c = report.stable.c if report.stable is not None else None
    below_ok = report.stable is not None and report.stable.reconstructs(below)
    return OptimalityReport(
        n=n,
        t=t,
        verification=report,
        h_paper=hp,
        expected_h=t * (n + 1) - 2,
        c=c,
        expected_c=t * n * (n + 1) - 2 * n,
        below_h=hp - 1,
        below_max=below.max(),
        below_bound=t * n * (n + 1) - 2 * (n + 1),
        below_reconstructs=below_ok,
    )


def lemma2_witnesses(A: GeneratorSet, t: int, n: int) -> list[tuple[int, ...]]:
    """``t`` distinct multiplicity vectors for ``n`` in ``(c'_t - a_k, c'_t)``.

    Start from any integer solution of ``sum x_i a_i = n`` and, for the ``s``-th
    vector, push ``x_i`` into ``[(s-1) a_{i+1}, s a_{i+1} - 1]`` for ``i < k``,
    carrying the quotient into ``x_{i+1}``.  Each vector has weight at most
    ``h_paper``.
    """
    A.require_theorem_shape()
    th = thresholds(A, t)
    cp, a = th.c_prime, list(A.nonzero)
    k = A.k
    if not cp - a[-1] < n < cp:
        raise RangeError(f"n = {n} outside ({cp - a[-1]}, {cp})")
    _, coeffs = bezout(a)
    base = [n * c for c in coeffs]
    out = []
    for s in range(1, t + 1):
        x = list(base)
        for i in range(k - 1):
            m = a[i + 1]
            q = (x[i] - (s - 1) * m) // m
            x[i] -= q * m
            x[i + 1] += q * a[i]
        if x[-1] < 0 or sum(x) > th.h_paper:
            raise WitnessFailure(f"vector {x} for n = {n}, s = {s} violates the weight/sign bounds")
        out.append(tuple(x))
    return out


def lemma3_witnesses(A: GeneratorSet, t: int) -> list[tuple[int, ...]]:
    """``t`` distinct vectors of weight at most ``h_paper + 1`` and value ``c'_t``.

    For ``r = 0..t-1``: ``p_1 = (t-r) a_2 - 1``, ``p_i = (t-r) a_{i+1} - 1 + r a_{i-1}``
    for ``2 <= i <= k-1`` and ``p_k = r a_{k-1}``.
    """
    A.require_theorem_shape()
    th = thresholds(A, t)
    a, k = A.elements, A.k
    out = []
    for r in range(t):
        p = [(t - r) * a[2] - 1]
        p += [(t - r) * a[i + 1] - 1 + r * a[i - 1] for i in range(2, k)]
        p.append(r * a[k - 1])
        value = sum(x * ai for x, ai in zip(p, A.nonzero))
        weight = sum(p)
        if (min(p) < 0 or value != th.c_prime
                or weight != th.h_paper + 1 - r * (a[k] - a[1])):
            raise WitnessFailure(f"vector {p} for r = {r} fails its identities")
        out.append(tuple(p))
    if len(set(out)) != len(out):
        raise WitnessFailure("witness vectors are not pairwise distinct")
    return out
