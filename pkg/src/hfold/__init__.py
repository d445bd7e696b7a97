"""h-fold sumsets ``hA``, their representation counts, and the stable
fringe-interval-fringe structure of ``(hA)^(t)``."""

__version__ = "0.1.0"

from .core import AffineMap, GeneratorSet, ThresholdReport, cprime, normalize, thresholds
from .frobenius import CoprimePair, count_solutions, t_frobenius
from .oracle import brute_force_membership, enumerate_representations
from .repcount import MembershipSet, RepTable, exact_rep_count, membership_set, rep_count_table
from .structure import (
    Decomposition,
    VerificationReport,
    decompose,
    empirical_threshold,
    lemma2_witnesses,
    lemma3_witnesses,
    verify_optimality,
    verify_theorem,
)

__all__ = [
    "AffineMap", "CoprimePair", "Decomposition", "GeneratorSet", "MembershipSet", "RepTable",
    "ThresholdReport", "VerificationReport", "brute_force_membership", "count_solutions", "cprime",
    "decompose", "empirical_threshold", "enumerate_representations", "exact_rep_count",
    "lemma2_witnesses", "lemma3_witnesses", "membership_set", "normalize", "rep_count_table",
    "t_frobenius", "thresholds", "verify_optimality", "verify_theorem",
]
