from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drinfeld_braiding.combinatorics import (
    SubsetIndex,
    binom_c,
    check_subset,
    eprime_admissible,
    eprime_case,
    eprime_grouped,
    eprime_report,
    eprime_value,
    lemma33_check,
    lemma33_report,
    lemma33_sums,
    subsets,
)
from drinfeld_braiding.report import VerificationReport


def test_binom_examples():
    assert binom_c(0, 5) == 1
    assert binom_c(3, 2) == 0
    assert binom_c(2, -1) == 0
    assert binom_c(0, -1) == 0


@given(st.integers(-3, 12), st.integers(-3, 12))
def test_binom_matches_math_comb(a, b):
    expected = comb(b, a) if 0 <= a <= b else 0
    assert binom_c(a, b) == expected


def test_subset_order():
    assert list(subsets((1, 2, 3))) == [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def test_subset_validation():
    assert check_subset((1, 3), 3) == (1, 3)
    with pytest.raises(ValueError):
        check_subset((2, 1), 3)
    with pytest.raises(ValueError):
        check_subset((1, 4), 3)
    with pytest.raises(ValueError):
        SubsetIndex(3, (1, 1))
    assert len(SubsetIndex(4, (1, 4))) == 2


def test_lemma33_examples():
    assert lemma33_sums(0, 0, 1)[0] == -1
    assert lemma33_sums(1, 0, 2)[1] == 0
    assert lemma33_sums(2, 0, 5)[0] == -1
    rep = VerificationReport("x")
    assert lemma33_check(2, 3, 5, rep) and rep.overall
    with pytest.raises(ValueError):
        lemma33_check(3, 0, 3)


@given(st.integers(1, 14), st.integers(0, 10), st.data())
def test_lemma33_property(t, s, data):
    r = data.draw(st.integers(0, t - 1))
    a, b = lemma33_sums(r, s, t)
    assert a == -((-1) ** r) and b == 0


def test_lemma33_fails_outside_hypothesis():
    # r = t is excluded by the lemma; the sum (a) then differs from -(-1)^r
    a, _ = lemma33_sums(3, 0, 3)
    assert a != -((-1) ** 3)


def test_lemma33_report():
    rep = lemma33_report(12, 8)
    assert rep.overall
    assert rep.checks[0].detail["tuples_checked"] == 702


def test_eprime_examples():
    assert eprime_value(2, 0, (), ()) == 0
    assert eprime_value(3, 1, (1,), (2,)) == 0
    assert eprime_value(4, 2, (1,), (1,)) == 0
    assert eprime_case(4, 2, (1,), (1,)) == "I"
    with pytest.raises(ValueError):
        eprime_value(3, 0, (1,), ())


def test_eprime_loose_condition_counterexample():
    # |S'∪S''| <= n-1 alone does not force nullity
    assert eprime_value(3, 2, (1,), (2,)) == -1
    assert not eprime_admissible(3, 2, (1,), (2,))


@given(st.integers(1, 5), st.data())
def test_eprime_grouped_matches_enumeration(n, data):
    j = data.draw(st.integers(0, n - 1))
    universe = list(range(1, n + 1))
    s1 = tuple(sorted(data.draw(st.sets(st.sampled_from(universe), max_size=j))))
    s2 = tuple(sorted(data.draw(st.sets(st.sampled_from(universe)))))
    assert eprime_value(n, j, s1, s2) == eprime_grouped(n, j, s1, s2)
    if eprime_admissible(n, j, s1, s2):
        assert eprime_value(n, j, s1, s2) == 0


def test_eprime_report():
    rep = eprime_report(6)
    assert rep.overall
    detail = rep.checks[0].detail
    assert detail["tuples_checked"] == sum(detail["case_counts"].values()) > 0
