import pytest
from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from drinfeld_braiding.algebra import get_algebra
from drinfeld_braiding.elements import make_element
from drinfeld_braiding.rmatrix import build_R

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def A4():
    return get_algebra("uhsl2", 4)


@pytest.fixture(scope="session")
def A5():
    return get_algebra("uhsl2", 5)


@pytest.fixture(scope="session")
def T4():
    return get_algebra("trivial", 4)


@pytest.fixture(scope="session")
def R4():
    return build_R("uhsl2", 4)


@pytest.fixture(scope="session")
def R5():
    return build_R("uhsl2", 5)


rationals = st.builds(mpq, st.integers(-4, 4), st.integers(1, 3))
monomials = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(lambda m: sum(m) <= 2)


def elements(algebra, rank=1, max_terms=3):
    """Random sparse elements with small PBW degree and h-power."""
    term = st.tuples(st.tuples(*[monomials] * rank), st.integers(0, algebra.order - 1), rationals)

    def build(terms):
        acc = {}
        for key, k, c in terms:
            acc[(key, k)] = acc.get((key, k), mpq(0)) + c
        return make_element(algebra, rank, {k: v for k, v in acc.items() if v})

    return st.lists(term, max_size=max_terms).map(build)
