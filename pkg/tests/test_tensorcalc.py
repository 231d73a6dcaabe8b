import pytest
from gmpy2 import mpq
from hypothesis import given, settings

from drinfeld_braiding.algebra import get_algebra
from drinfeld_braiding.combinatorics import subsets
from drinfeld_braiding.drinfeld import certify_hprime, certify_hprime_tensor2, hprime_samples
from drinfeld_braiding.series import ScalarSeries
from drinfeld_braiding.tensorcalc import (
    SlotCoalgebra,
    delta_power,
    delta_sigma_lower,
    delta_sigma_upper,
    embed_j_sigma,
    mobius_roundtrip,
    tensor_valuation,
    tilde,
    tilde_coproduct,
)

from conftest import elements

A3 = get_algebra("uhsl2", 3)
A4 = get_algebra("uhsl2", 4)


def gens(alg):
    return {"1": alg.unit(), "E": alg.E(), "F": alg.F(), "H": alg.H(), "EF": alg.E() * alg.F()}


def test_embed_examples():
    x, one = A3.E(), A3.unit()
    assert embed_j_sigma(x, (1,), 2) == x.tensor(one)
    assert embed_j_sigma(x, (2,), 2) == one.tensor(x)
    ab = A3.E().tensor(A3.F())
    assert embed_j_sigma(ab, (1, 3), 3) == A3.E().tensor(one).tensor(A3.F())


def test_embed_errors():
    with pytest.raises(ValueError):
        embed_j_sigma(A3.E(), (1, 2), 2)
    with pytest.raises(ValueError):
        embed_j_sigma(A3.E().tensor(A3.F()), (2, 1), 2)
    with pytest.raises(ValueError):
        embed_j_sigma(A3.E(), (3,), 2)


def test_delta_power_examples():
    x = A3.E() * A3.F()
    assert delta_power(x, 1) == x
    assert delta_power(A3.unit(), 3) == A3.unit(3)
    H, one = A3.H(), A3.unit()
    expected = H.tensor(one).tensor(one) + one.tensor(H).tensor(one) + one.tensor(one).tensor(H)
    assert delta_power(H, 3) == expected
    assert delta_power(A3.E(), 0) == ScalarSeries.zero(3)


def test_delta_sigma_upper_examples():
    x = A3.E() + A3.unit().scale(3)
    assert delta_sigma_upper(x, (), 3) == A3.unit(3).scale(3)
    assert delta_sigma_upper(x, (1, 2), 2) == A3.coproduct(x)
    one = A3.unit()
    assert delta_sigma_upper(A3.H(), (2,), 3) == one.tensor(A3.H()).tensor(one)


def test_delta_sigma_lower_examples():
    x = A3.E() + A3.unit().scale(2)
    assert delta_sigma_lower(x, (1,), 1) == x - A3.unit().scale(2)
    for n in (1, 2, 3):
        assert not delta_sigma_lower(A3.unit(), tuple(range(1, n + 1)), n)
    assert not delta_sigma_lower(A3.H(), (1, 2), 2)


@pytest.mark.parametrize("name", ["1", "E", "F", "H", "EF"])
def test_mobius_roundtrip_all_subsets(name):
    x = gens(A3)[name]
    for sigma in subsets((1, 2, 3)):
        assert mobius_roundtrip(x, sigma, 3).overall


def test_mobius_examples():
    assert mobius_roundtrip(A3.E(), (1, 2), 2).overall
    assert mobius_roundtrip(A3.E() * A3.F(), (1, 3), 3).overall


def test_delta_sigma_support():
    # legs outside Σ carry the unit
    x = A3.E() * A3.F() + A3.H()
    for sigma in [(1,), (2,), (1, 3)]:
        d = delta_sigma_lower(x, sigma, 3)
        assert d
        for leg in range(3):
            if leg + 1 not in sigma:
                assert all(key[leg] == (0, 0, 0) for key, _ in d.terms)


def test_tensor_valuation_examples():
    assert str(tensor_valuation(A3.zero(2))) == ">=3"
    t = A3.E().tensor(A3.F()).times_h(2)
    assert tensor_valuation(t) == 2
    hE = A3.E().times_h()
    d2 = delta_sigma_lower(hE, (1, 2), 2)
    assert tensor_valuation(d2) >= 2
    # δ2(hE) = hE⊗(K - 1): leading term h^2/2 E⊗H
    assert d2 == hE.tensor(A3.K() - A3.unit())


def test_rescaled_delta_valuation_trivial():
    T = get_algebra("trivial", 4)
    assert not delta_sigma_lower(T.H(), (1, 2), 2)
    x = (T.E() * T.F()).times_h(3)
    assert tensor_valuation(delta_sigma_lower(x, (1, 2, 3), 3)) >= 3


def test_tilde_examples():
    assert tilde_coproduct(A3.unit(2)) == A3.unit(4)
    H, one = A3.H(), A3.unit()
    x = H.tensor(one)
    expected = H.tensor(one).tensor(one).tensor(one) + one.tensor(one).tensor(H).tensor(one)
    assert tilde_coproduct(x) == expected
    with pytest.raises(ValueError):
        tilde_coproduct(H)


def test_tilde_slot_coalgebra_agrees():
    x = A3.E().tensor(A3.F()) + A3.H().tensor(A3.unit())
    assert tilde(A3).delta_power(x, 2) == tilde_coproduct(x)
    assert SlotCoalgebra(A3, 2).mobius_roundtrip(x, (1, 2), 2).overall


@settings(max_examples=30)
@given(elements(A3, rank=2, max_terms=2), elements(A3, rank=2, max_terms=2))
def test_tilde_multiplicative(x, y):
    assert tilde_coproduct(x * y) == tilde_coproduct(x) * tilde_coproduct(y)


@settings(max_examples=20)
@given(elements(A3, max_terms=2))
def test_delta_power_coassociative(x):
    d3 = delta_power(x, 3)
    assert d3 == A3.apply_at_leg(A3.coproduct(x), 1, A3.coproduct_mono, 2)


def test_tensor_membership_matches_legs():
    pool = hprime_samples(A4)[:4] + [("E", A4.E()), ("F", A4.F())]
    for la, a in pool:
        for lb, b in pool:
            legs = certify_hprime(a).certified and certify_hprime(b).certified
            assert certify_hprime_tensor2(a.tensor(b)).certified == legs, (la, lb)
