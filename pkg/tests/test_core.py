import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import generator_sets
from hfold.core import (
    AffineMap,
    GeneratorSet,
    bezout,
    cell_budget_override,
    check_cells,
    cprime,
    ext_gcd,
    normalize,
    thresholds,
)
from hfold.errors import FewerThanTwoDistinct, InputError, KTooSmall, OverflowBudgetExceeded


@pytest.mark.parametrize(
    "raw, elements, scale, offset",
    [
        ([0, 2, 3], (0, 2, 3), 1, 0),
        ([6, 10, 14], (0, 1, 2), 4, 6),
        ([7, 7, 3], (0, 1), 4, 3),
        ([-5, 1, -2], (0, 1, 2), 3, -5),
    ],
)
def test_normalize_examples(raw, elements, scale, offset):
    A, amap = normalize(raw)
    assert A.elements == elements
    assert amap == AffineMap(scale, offset)


@pytest.mark.parametrize("raw", [[], [5], [4, 4, 4]])
def test_normalize_rejects_degenerate(raw):
    with pytest.raises(FewerThanTwoDistinct):
        normalize(raw)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=6).filter(lambda xs: len(set(xs)) >= 2))
def test_normalize_idempotent(raw):
    A, _ = normalize(raw)
    again, amap = normalize(A.elements)
    assert again == A
    assert amap.is_identity


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=4).filter(lambda xs: len(set(xs)) >= 2),
       st.integers(0, 3))
def test_affine_round_trip(raw, h):
    A, amap = normalize(raw)
    raw_sums = {sum(c) for c in itertools.combinations_with_replacement(sorted(set(raw)), h)}
    norm_sums = {sum(c) for c in itertools.combinations_with_replacement(A.elements, h)}
    assert {amap.apply(s, h) for s in norm_sums} == raw_sums


@pytest.mark.parametrize("bad", [(1, 2), (0, 2, 4), (0, 3, 2), (0,)])
def test_generator_set_validates(bad):
    with pytest.raises(InputError):
        GeneratorSet(bad)


def test_thresholds_examples():
    th = thresholds(GeneratorSet((0, 2, 3)), 1)
    assert (th.h_paper, th.h_nathanson, th.h_wcc, th.c_prime) == (1, 7, 1, 4)
    th = thresholds(GeneratorSet((0, 2, 3)), 2)
    assert (th.h_paper, th.h_nathanson, th.h_wcc) == (4, 16, None)
    assert thresholds(GeneratorSet((0, 3, 4)), 2).h_paper == 6
    assert th.h_empirical is None


def test_cprime_examples():
    assert cprime(GeneratorSet((0, 2, 3)), 1) == 4
    assert cprime(GeneratorSet((0, 2, 3)), 2) == 10
    assert cprime(GeneratorSet((0, 1, 2)), 1) == 1
    assert cprime(GeneratorSet((0, 2, 3, 7)), 1) == 22


def test_k_one_rejected_by_structure_operations():
    A = GeneratorSet((0, 1))
    with pytest.raises(KTooSmall):
        thresholds(A, 1)
    with pytest.raises(KTooSmall):
        cprime(A, 1)


@given(generator_sets(max_k=5, max_element=30), st.integers(1, 6))
def test_threshold_invariants(A, t):
    th = thresholds(A, t)
    assert th.h_paper < th.h_nathanson
    if t == 1:
        assert th.h_wcc == th.h_paper == sum(A.elements[2:]) - A.k


def test_overflow_detected():
    A = GeneratorSet((0, 1, 2**40))
    with pytest.raises(OverflowBudgetExceeded):
        thresholds(A, 2**30)
    with pytest.raises(OverflowBudgetExceeded):
        check_cells(2**20, 2**5)
    with cell_budget_override(10):
        with pytest.raises(OverflowBudgetExceeded):
            check_cells(4, 3)
    assert check_cells(4, 3) == 12


def test_cell_budget_env(monkeypatch):
    monkeypatch.setenv("HFOLD_CELL_BUDGET", "5")
    with pytest.raises(OverflowBudgetExceeded):
        check_cells(2, 3)
    monkeypatch.setenv("HFOLD_CELL_BUDGET", "many")
    with pytest.raises(InputError):
        check_cells(2, 3)


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_ext_gcd(a, b):
    g, u, v = ext_gcd(a, b)
    assert u * a + v * b == g
    assert g == abs(gcd(a, b))


@given(st.lists(st.integers(1, 100), min_size=1, max_size=6))
def test_bezout_chain(values):
    g, coeffs = bezout(values)
    assert sum(c * x for c, x in zip(coeffs, values)) == g
    assert g == gcd(*values)
