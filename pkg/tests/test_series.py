import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from drinfeld_braiding.series import (
    NotInvertibleError,
    OrderMismatchError,
    ScalarSeries,
    format_series,
    parse_series,
    series_exp,
    series_inv,
    series_mul,
    series_valuation,
)

N = 4
coeff = st.builds(mpq, st.integers(-5, 5), st.integers(1, 4))
series = st.lists(coeff, min_size=N, max_size=N).map(lambda cs: ScalarSeries(cs, N))
units = series.filter(lambda s: s[0] != 0)


def S(*cs, order=N):
    return ScalarSeries(cs, order)


def test_mul_examples():
    assert series_mul(S(1), S(1)) == S(1)
    assert series_mul(S(0, 1, order=2), S(0, 1, order=2)) == ScalarSeries.zero(2)
    assert series_mul(S(1, 1, order=3), S(1, -1, 1, order=3)) == ScalarSeries.one(3)


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        series_mul(S(1, order=2), S(1, order=3))
    with pytest.raises(OrderMismatchError):
        S(1, order=2) + S(1, order=3)


def test_inverse_examples():
    assert series_inv(S(1)) == S(1)
    assert series_inv(S(1, 1, order=3)) == S(1, -1, 1, order=3)
    assert series_inv(S(2, order=6)) == S(mpq(1, 2), order=6)
    with pytest.raises(NotInvertibleError):
        series_inv(S(0, 1))


def test_exp_examples():
    assert series_exp(ScalarSeries.zero(N)) == S(1)
    assert series_exp(S(0, 1, order=3)) == S(1, 1, mpq(1, 2), order=3)
    assert series_exp(S(0, 1)) * series_exp(S(0, -1)) == S(1)
    with pytest.raises(ValueError):
        series_exp(S(1, 1))


def test_valuation_examples():
    v = series_valuation(ScalarSeries.zero(N))
    assert v.saturated and int(v) == N and str(v) == f">={N}"
    assert series_valuation(S(0, 0, 1, 3)) == 2


def test_rendering_round_trip():
    s = S(1, mpq(-1, 2), 0, 3)
    text = format_series(s.sparse())
    assert text == "1 - 1/2*h + 3*h^3"
    assert parse_series(text) == s.sparse()


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(units)
def test_inverse_two_sided(a):
    assert a * series_inv(a) == ScalarSeries.one(N)
    assert series_inv(a) * a == ScalarSeries.one(N)


@given(series, series)
def test_valuation_of_product(a, b):
    va, vb = int(a.valuation()), int(b.valuation())
    vab = int((a * b).valuation())
    assert vab >= min(va + vb, N)
    if va + vb < N:
        assert vab == va + vb


@given(series, series)
def test_h_multiples(u, v):
    h = ScalarSeries.h(N)
    assert int(series_valuation((h * u) * (h * v))) >= 2


@given(series)
def test_text_round_trip(a):
    assert parse_series(format_series(a.sparse())) == a.sparse()
