"""Subset embeddings, iterated coproducts and the alternating maps δ_Σ.

Everything here is written once for a "slot coalgebra": a tensor power
H^{⊗w} whose elements occupy ``w`` consecutive legs.  ``w = 1`` gives
(H, Δ, 1); ``w = 2`` gives (H⊗H, Δ̃, 1⊗1) where Δ̃(a⊗b) = a₁⊗b₁⊗a₂⊗b₂.
Subsets Σ are 1-based strictly increasing tuples of slot indices.
"""
from __future__ import annotations

from .algebra import HopfAlgebra
from .combinatorics import check_subset, subsets
from .elements import ONE, AlgebraElement, TensorElement, _add_into, make_element
from .report import VerificationReport
from .series import ScalarSeries, Valuation


class SlotCoalgebra:
    def __init__(self, algebra: HopfAlgebra, width: int = 1):
        if width < 1:
            raise ValueError("slot width must be positive")
        self.algebra = algebra
        self.width = width
        self._sorted_cache: dict = {}

    def __repr__(self) -> str:
        return f"SlotCoalgebra({self.algebra!r}, width={self.width})"

    def _check(self, x: TensorElement) -> None:
        if x.algebra is not self.algebra:
            raise ValueError("element belongs to a different instance")
        if x.rank != self.width:
            raise ValueError(f"expected rank {self.width}, got {x.rank}")

    def unit(self, n: int = 1) -> TensorElement:
        return self.algebra.unit(self.width * n)

    def counit(self, x: TensorElement) -> ScalarSeries:
        self._check(x)
        return x.coefficient((ONE,) * self.width)

    def _leg_power(self, m, n: int) -> tuple:
        key = (m, n)
        cached = self._sorted_cache.get(key)
        if cached is None:
            terms = self.algebra.delta_power_mono(m, n)
            cached = tuple(sorted(((sub, k, c) for (sub, k), c in terms.items()), key=lambda t: t[1]))
            self._sorted_cache[key] = cached
        return cached

    def delta_power(self, x: TensorElement, n: int):
        """Δ^n of x; a rank ``width*n`` tensor, or the counit scalar when n = 0."""
        self._check(x)
        if n == 0:
            return self.counit(x)
        if n == 1:
            return x
        w = self.width
        order = self.algebra.order
        acc: dict = {}
        for (key, k0), c0 in x.terms.items():
            partial = [((), k0, c0)]
            for m in key:
                nxt = []
                for legs, k, c in partial:
                    for sub, k2, c2 in self._leg_power(m, n):
                        kk = k + k2
                        if kk >= order:
                            break
                        nxt.append((legs + (sub,), kk, c * c2))
                partial = nxt
            for legs, k, c in partial:
                new_key = tuple(legs[l][s] for s in range(n) for l in range(w))
                _add_into(acc, (new_key, k), c)
        return make_element(self.algebra, w * n, acc)

    def embed(self, y: TensorElement, sigma, n: int) -> TensorElement:
        """j_Σ: slot m of y goes to slot sigma[m] of an n-slot tensor, units elsewhere."""
        sigma = check_subset(sigma, n)
        w = self.width
        if y.rank != w * len(sigma):
            raise ValueError(f"rank {y.rank} does not match |Σ|={len(sigma)} slots of width {w}")
        positions = [(i - 1) * w + l for i in sigma for l in range(w)]
        return y.place(positions, w * n)

    def _lifted(self, value, n: int) -> TensorElement:
        if isinstance(value, ScalarSeries):
            return self.unit(n).scale(value)
        return value

    def delta_sigma_upper(self, x: TensorElement, sigma, n: int) -> TensorElement:
        """Δ_Σ = j_Σ ∘ Δ^|Σ|."""
        sigma = check_subset(sigma, n)
        if not sigma:
            return self.unit(n).scale(self.counit(x))
        return self.embed(self.delta_power(x, len(sigma)), sigma, n)

    def delta_sigma_lower(self, x: TensorElement, sigma, n: int, powers: dict | None = None) -> TensorElement:
        """δ_Σ = Σ_{Σ'⊆Σ} (-1)^{|Σ|-|Σ'|} Δ_Σ'."""
        sigma = check_subset(sigma, n)
        if powers is None:
            powers = {k: self.delta_power(x, k) for k in range(len(sigma) + 1)}
        acc: dict = {}
        for sub in subsets(sigma):
            if sub:
                term = self.embed(powers[len(sub)], sub, n)
            else:
                term = self._lifted(powers[0], n)
            sign = -1 if (len(sigma) - len(sub)) % 2 else 1
            for key, c in term.terms.items():
                _add_into(acc, key, c if sign > 0 else -c)
        return make_element(self.algebra, self.width * n, acc)

    def delta_n(self, x: TensorElement, n: int, powers: dict | None = None) -> TensorElement:
        return self.delta_sigma_lower(x, tuple(range(1, n + 1)), n, powers)

    def mobius_roundtrip(self, x: TensorElement, sigma, n: int) -> VerificationReport:
        """Compare Δ_Σ(x) with Σ_{Σ'⊆Σ} δ_Σ'(x)."""
        sigma = check_subset(sigma, n)
        rep = VerificationReport("mobius-roundtrip")
        powers = {k: self.delta_power(x, k) for k in range(len(sigma) + 1)}
        lhs = self.delta_sigma_upper(x, sigma, n)
        rhs = self.algebra.zero(self.width * n)
        for sub in subsets(sigma):
            rhs = rhs + self.delta_sigma_lower(x, sub, n, powers)
        rep.add_residual(
            "Δ_Σ = Σ δ_Σ'", f"Σ={sigma} n={n} width={self.width}", lhs - rhs, self.algebra.order
        )
        return rep


def embed_j_sigma(x: TensorElement, sigma, n: int, width: int = 1) -> TensorElement:
    return SlotCoalgebra(x.algebra, width).embed(x, sigma, n)


def delta_power(x: AlgebraElement, n: int):
    return SlotCoalgebra(x.algebra, 1).delta_power(x, n)


def delta_sigma_upper(x: AlgebraElement, sigma, n: int) -> TensorElement:
    return SlotCoalgebra(x.algebra, 1).delta_sigma_upper(x, sigma, n)


def delta_sigma_lower(x: AlgebraElement, sigma, n: int) -> TensorElement:
    return SlotCoalgebra(x.algebra, 1).delta_sigma_lower(x, sigma, n)


def mobius_roundtrip(x: TensorElement, sigma, n: int, width: int = 1) -> VerificationReport:
    return SlotCoalgebra(x.algebra, width).mobius_roundtrip(x, sigma, n)


def tensor_valuation(t: TensorElement) -> Valuation:
    return t.valuation()


def tilde_coproduct(x: TensorElement) -> TensorElement:
    """Coproduct of H⊗H viewed in H^{⊗4}: σ₂₃ ∘ (Δ⊗Id⊗Id) ∘ (Id⊗Δ)."""
    if x.rank != 2:
        raise ValueError(f"tilde_coproduct needs rank 2, got {x.rank}")
    alg = x.algebra
    step = alg.apply_at_leg(x, 1, alg.coproduct_mono, 2)
    step = alg.apply_at_leg(step, 0, alg.coproduct_mono, 2)
    return step.permute((0, 2, 1, 3))


def tilde(algebra: HopfAlgebra) -> SlotCoalgebra:
    return SlotCoalgebra(algebra, 2)
