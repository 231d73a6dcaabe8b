"""U_h(sl2) and undeformed U(sl2) over Q[h]/h^N in the PBW basis F^a H^b E^c.

Conventions for the deformed instance ``uhsl2``::

    q = exp(h/2),  K = exp(h H / 2)
    [H, E] = 2E,  [H, F] = -2F,  [E, F] = (K - K^-1) / (q - q^-1)
    Δ(E) = E⊗K + 1⊗E,  Δ(F) = F⊗1 + K^-1⊗F,  Δ(H) = H⊗1 + 1⊗H
    S(E) = -E K^-1,  S(F) = -K F,  S(H) = -H

The ``trivial`` instance is U(sl2) with [E, F] = H, every generator primitive
and R = 1⊗1.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .elements import (
    ONE,
    AlgebraElement,
    TensorElement,
    _add_into,
    make_element,
    sum_elements,
)
from .series import DEFAULT_ORDER, ScalarSeries, as_rational, series_inv

INSTANCES = ("uhsl2", "trivial")

E_MONO = (0, 0, 1)
F_MONO = (1, 0, 0)
H_MONO = (0, 1, 0)


class UnknownInstanceError(ValueError):
    pass


@lru_cache(maxsize=None)
def _shift_pow(b: int, s: int) -> tuple:
    """Integer coefficients of (H + s)^b, lowest degree first."""
    return tuple(comb(b, i) * s ** (b - i) for i in range(b + 1))


def _intpoly_mul(p, q) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return out


def _hpoly_substitute(poly: dict, s: int, order: int) -> dict:
    """poly(H + s) for ``poly = {(deg, k): c}``."""
    out: dict = {}
    for (m, k), g in poly.items():
        for i, ic in enumerate(_shift_pow(m, s)):
            if ic:
                _add_into(out, (i, k), g * ic)
    return out


class HopfAlgebra:
    """A Hopf algebra instance over Q[h]/h^N with PBW-normal-form multiplication.

    Obtain instances through :func:`get_algebra` so that elements of the same
    (name, order) share one object and one set of caches.
    """

    def __init__(self, name: str, order: int = DEFAULT_ORDER):
        if name not in INSTANCES:
            raise UnknownInstanceError(f"unknown instance {name!r}; expected one of {INSTANCES}")
        if order < 1:
            raise ValueError("order must be positive")
        self.name = name
        self.order = order
        self.deformed = name == "uhsl2"
        self._ef_bracket = self._build_ef_bracket()
        self._ef_cache: dict = {}
        self._p_cache: dict = {}
        self._mono_mul_cache: dict = {}
        self._key_mul_cache: dict = {}
        self._coproduct_cache: dict = {}
        self._antipode_cache: dict = {}
        self._delta_power_cache: dict = {}

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name!r}, order={self.order})"

    def __reduce__(self):
        return (get_algebra, (self.name, self.order))

    # -- scalars and generators ----------------------------------------
    def series(self, coeffs) -> ScalarSeries:
        return ScalarSeries(coeffs, self.order)

    def unit(self, rank: int = 1) -> TensorElement:
        return make_element(self, rank, {((ONE,) * rank, 0): mpq(1)})

    def zero(self, rank: int = 1) -> TensorElement:
        return make_element(self, rank, {})

    def scalar(self, c, rank: int = 1) -> TensorElement:
        if isinstance(c, ScalarSeries):
            return self.unit(rank).scale(c)
        return self.unit(rank).scale(as_rational(c))

    def monomial(self, f: int = 0, h: int = 0, e: int = 0, coeff=1) -> AlgebraElement:
        return AlgebraElement.monomial(self, (f, h, e), coeff)

    def E(self) -> AlgebraElement:
        return self.monomial(e=1)

    def F(self) -> AlgebraElement:
        return self.monomial(f=1)

    def H(self) -> AlgebraElement:
        return self.monomial(h=1)

    def hbar(self, power: int = 1, rank: int = 1) -> TensorElement:
        """The scalar h^power as an element of H^{⊗rank}."""
        return self.unit(rank).times_h(power)

    def K(self, sign: int = 1) -> AlgebraElement:
        """exp(sign·h·H/2) as a finite H-polynomial."""
        terms = {}
        for m in range(self.order):
            terms[(((0, m, 0),), m)] = mpq(sign, 2) ** m / factorial(m)
        return make_element(self, 1, terms)

    def K_inv(self) -> AlgebraElement:
        return self.K(-1)

    def q_series(self, sign: int = 1, order: int | None = None) -> ScalarSeries:
        n = self.order if order is None else order
        return ScalarSeries([mpq(sign, 2) ** m / factorial(m) for m in range(n)], n)

    # -- the [E, F] relation ------------------------------------------
    def _build_ef_bracket(self) -> dict:
        """[E, F] as an H-polynomial ``{(deg, k): c}``."""
        if not self.deformed:
            return {(1, 0): mpq(1)}
        n = self.order
        # (q - q^-1)/h = sum over odd m of 2 (1/2)^m / m! h^(m-1)
        denom = ScalarSeries(
            [mpq(2) * mpq(1, 2) ** (j + 1) / factorial(j + 1) if j % 2 == 0 else 0 for j in range(n)],
            n,
        )
        inv = series_inv(denom).sparse()
        out: dict = {}
        # (K - K^-1)/h: H^m carries 2 (1/2)^m / m! h^(m-1) for odd m
        for m in range(1, n + 1, 2):
            g = mpq(2) * mpq(1, 2) ** m / factorial(m)
            for j, c in inv.items():
                k = m - 1 + j
                if k < n:
                    _add_into(out, (m, k), g * c)
        return out

    def ef_bracket(self) -> AlgebraElement:
        return make_element(self, 1, {(((0, m, 0),), k): c for (m, k), c in self._ef_bracket.items()})

    def _p_poly(self, x: int) -> dict:
        """sum_{j<x} C(H - 2j) where C(H) = [E, F]."""
        cached = self._p_cache.get(x)
        if cached is None:
            cached = {}
            for j in range(x):
                for key, c in _hpoly_substitute(self._ef_bracket, -2 * j, self.order).items():
                    _add_into(cached, key, c)
            self._p_cache[x] = cached
        return cached

    def _ef(self, c: int, d: int) -> dict:
        """Normal form of E^c F^d as ``{((f, h, e), k): coeff}``."""
        if c == 0 or d == 0:
            return {((d, 0, c), 0): mpq(1)}
        cached = self._ef_cache.get((c, d))
        if cached is not None:
            return cached
        n = self.order
        acc: dict = {}
        for ((x, y, z), k), coef in self._ef(c - 1, d).items():
            # E F^x = F^x E + F^(x-1) sum_{j<x} C(H - 2j);  E H^y = (H - 2)^y E
            for i, ic in enumerate(_shift_pow(y, -2)):
                if ic:
                    _add_into(acc, ((x, i, z + 1), k), coef * ic)
            if x:
                for (b2, k2), pc in self._p_poly(x).items():
                    kk = k + k2
                    if kk < n:
                        _add_into(acc, ((x - 1, b2 + y, z), kk), coef * pc)
        self._ef_cache[(c, d)] = acc
        return acc

    def mono_mul(self, m1, m2) -> tuple:
        """Product of two PBW monomials as ``((mono, k, c), ...)`` sorted by k."""
        key = (m1, m2)
        cached = self._mono_mul_cache.get(key)
        if cached is not None:
            return cached
        a, b, c = m1
        d, e, f = m2
        acc: dict = {}
        for ((x, y, z), k), coef in self._ef(c, d).items():
            # F^a H^b (F^x H^y E^z) H^e E^f with H^b F^x = F^x (H-2x)^b, E^z H^e = (H-2z)^e E^z
            poly = _intpoly_mul(_shift_pow(b, -2 * x), (0,) * y + (1,))
            poly = _intpoly_mul(poly, _shift_pow(e, -2 * z))
            for i, ic in enumerate(poly):
                if ic:
                    _add_into(acc, ((a + x, i, z + f), k), coef * ic)
        result = tuple(sorted(((m, k, v) for (m, k), v in acc.items()), key=lambda t: t[1]))
        self._mono_mul_cache[key] = result
        return result

    def _key_mul(self, ka: tuple, kb: tuple) -> tuple:
        cached = self._key_mul_cache.get((ka, kb))
        if cached is not None:
            return cached
        n = self.order
        partial = [((), 0, mpq(1))]
        for m1, m2 in zip(ka, kb):
            leg = self.mono_mul(m1, m2)
            nxt = []
            for key, k, c in partial:
                for m, k2, c2 in leg:
                    kk = k + k2
                    if kk >= n:
                        break
                    nxt.append((key + (m,), kk, c * c2))
            partial = nxt
        result = tuple(partial)
        if len(ka) <= 4:
            self._key_mul_cache[(ka, kb)] = result
        return result

    def multiply(self, x: TensorElement, y: TensorElement) -> TensorElement:
        n = self.order
        acc: dict = {}
        for (ka, a), ca in x.terms.items():
            for (kb, b), cb in y.terms.items():
                base = a + b
                if base >= n:
                    continue
                c0 = ca * cb
                for key, k, c in self._key_mul(ka, kb):
                    kk = base + k
                    if kk >= n:
                        continue
                    _add_into(acc, (key, kk), c0 * c)
        return make_element(self, x.rank, acc)

    # -- Hopf structure ----------------------------------------------
    def _generator_coproducts(self) -> dict:
        one = self.unit()
        E, F, H = self.E(), self.F(), self.H()
        if self.deformed:
            return {
                "E": E.tensor(self.K()) + one.tensor(E),
                "F": F.tensor(one) + self.K_inv().tensor(F),
                "H": H.tensor(one) + one.tensor(H),
            }
        return {x: g.tensor(one) + one.tensor(g) for x, g in zip("EFH", (E, F, H))}

    def coproduct_mono(self, m) -> TensorElement:
        cached = self._coproduct_cache.get(m)
        if cached is not None:
            return cached
        if m == ONE:
            result = self.unit(2)
        else:
            gens = self._generator_coproducts()
            f, h, e = m
            if e:
                result = self.coproduct_mono((f, h, e - 1)) * gens["E"]
            elif h:
                result = self.coproduct_mono((f, h - 1, 0)) * gens["H"]
            else:
                result = self.coproduct_mono((f - 1, 0, 0)) * gens["F"]
        self._coproduct_cache[m] = result
        return result

    def coproduct(self, x: TensorElement) -> TensorElement:
        if x.rank != 1:
            raise ValueError("coproduct takes an element of H; use apply_at_leg for tensors")
        return self.apply_at_leg(x, 0, self.coproduct_mono, 2)

    def counit(self, x: TensorElement) -> ScalarSeries:
        if x.rank != 1:
            raise ValueError("counit takes an element of H")
        return x.coefficient((ONE,))

    def antipode_mono(self, m) -> AlgebraElement:
        cached = self._antipode_cache.get(m)
        if cached is not None:
            return cached
        if m == ONE:
            result = self.unit()
        else:
            if self.deformed:
                sE = -(self.E() * self.K_inv())
                sF = -(self.K() * self.F())
            else:
                sE, sF = -self.E(), -self.F()
            sH = -self.H()
            f, h, e = m
            # S(m' X) = S(X) S(m')
            if e:
                result = sE * self.antipode_mono((f, h, e - 1))
            elif h:
                result = sH * self.antipode_mono((f, h - 1, 0))
            else:
                result = sF * self.antipode_mono((f - 1, 0, 0))
        self._antipode_cache[m] = result
        return result

    def antipode(self, x: TensorElement) -> TensorElement:
        if x.rank != 1:
            raise ValueError("antipode takes an element of H")
        return self.apply_at_leg(x, 0, self.antipode_mono, 1)

    # -- leg-wise linear maps ----------------------------------------
    def apply_at_leg(self, t: TensorElement, leg: int, fn, width: int) -> TensorElement:
        """Apply a linear map H -> H^{⊗width} (given on monomials) to one leg.

        ``width == 0`` means a map to scalars (e.g. the counit).
        """
        if not 0 <= leg < t.rank:
            raise ValueError(f"leg {leg} out of range for rank {t.rank}")
        n = self.order
        new_rank = t.rank - 1 + width
        acc: dict = {}
        for (key, k), c in t.terms.items():
            image = fn(key[leg])
            if isinstance(image, ScalarSeries):
                items = [((), j, v) for j, v in image.sparse().items()]
            else:
                items = [(sub, j, v) for (sub, j), v in image.terms.items()]
            head, tail = key[:leg], key[leg + 1 :]
            for sub, j, v in items:
                kk = k + j
                if kk < n:
                    _add_into(acc, (head + sub + tail, kk), c * v)
        if new_rank == 0:
            return ScalarSeries.from_sparse({kk: v for (_, kk), v in acc.items()}, n)
        return make_element(self, new_rank, acc)

    def counit_mono(self, m) -> ScalarSeries:
        return ScalarSeries.one(self.order) if m == ONE else ScalarSeries.zero(self.order)

    def multiply_legs(self, t: TensorElement) -> AlgebraElement:
        """m: H⊗H -> H."""
        if t.rank != 2:
            raise ValueError("multiply_legs needs rank 2")
        parts = []
        for ((a, b), k), c in t.terms.items():
            prod = AlgebraElement.monomial(self, a) * AlgebraElement.monomial(self, b)
            parts.append(prod.times_h(k).scale(c))
        return sum_elements(parts, self, 1)

    # -- iterated coproducts of monomials ------------------------------
    def delta_power_mono(self, m, n: int) -> dict:
        """Δ^n(m) as ``{(key, k): c}`` (n >= 1)."""
        key = (m, n)
        cached = self._delta_power_cache.get(key)
        if cached is not None:
            return cached
        if n == 1:
            result = {((m,), 0): mpq(1)}
        elif n == 2:
            result = self.coproduct_mono(m).terms
        else:
            prev = make_element(self, n - 1, self.delta_power_mono(m, n - 1))
            result = self.apply_at_leg(prev, 0, self.coproduct_mono, 2).terms
        self._delta_power_cache[key] = result
        return result


@lru_cache(maxsize=None)
def get_algebra(name: str = "uhsl2", order: int = DEFAULT_ORDER) -> HopfAlgebra:
    return HopfAlgebra(name, order)


def normal_multiply(x: TensorElement, y: TensorElement) -> TensorElement:
    return x * y


def coproduct(x: AlgebraElement) -> TensorElement:
    return x.algebra.coproduct(x)


def counit(x: AlgebraElement) -> ScalarSeries:
    return x.algebra.counit(x)


def antipode(x: AlgebraElement) -> AlgebraElement:
    return x.algebra.antipode(x)


def specialize_h0(x: TensorElement) -> TensorElement:
    return x.specialize_h0()


def pbw_monomials(max_degree: int) -> list:
    """All (f, h, e) with f + h + e <= max_degree, sorted."""
    return sorted(
        (f, h, e)
        for f in range(max_degree + 1)
        for h in range(max_degree + 1 - f)
        for e in range(max_degree + 1 - f - h)
    )
