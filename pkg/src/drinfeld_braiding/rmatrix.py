"""The universal R-matrix of U_h(sl2) modulo h^N, Ad(R), and the products R_Σ."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .algebra import HopfAlgebra, get_algebra, pbw_monomials
from .classical import LieTensor
from .combinatorics import check_subset, format_subset, subsets
from .elements import ONE, TensorElement, _add_into, make_element
from .report import VerificationReport
from .series import NotInvertibleError, ScalarSeries, series_inv
from .tensorcalc import SlotCoalgebra


def _exp_series(a, order: int) -> ScalarSeries:
    """exp(a·h) truncated at h^order."""
    a = mpq(a)
    return ScalarSeries([a**m / factorial(m) for m in range(order)], order)


def q_power(a, order: int) -> ScalarSeries:
    """q^a = exp(a·h/2)."""
    return _exp_series(mpq(a) / 2, order)


def q_integer(n: int, order: int) -> ScalarSeries:
    """[n]_q = (q^n - q^-n)/(q - q^-1); numerator and denominator both divisible by h."""
    num = (q_power(n, order + 1) - q_power(-n, order + 1)).shift_down().truncate(order)
    den = (q_power(1, order + 1) - q_power(-1, order + 1)).shift_down().truncate(order)
    return num * series_inv(den)


def q_factorial(n: int, order: int) -> ScalarSeries:
    out = ScalarSeries.one(order)
    for k in range(1, n + 1):
        out = out * q_integer(k, order)
    return out


def r_coefficient(n: int, order: int) -> ScalarSeries:
    """c_n = q^{n(n+1)/2} (1 - q^-2)^n / [n]_q!."""
    one_minus = ScalarSeries.one(order) - q_power(-2, order)
    return q_power(n * (n + 1) // 2, order) * one_minus**n * series_inv(q_factorial(n, order))


def tensor_inverse(t: TensorElement) -> TensorElement:
    """Two-sided inverse modulo h^N by the geometric series in I - t/t0."""
    alg, rank = t.algebra, t.rank
    unit_key = ((ONE,) * rank, 0)
    t0 = t.terms.get(unit_key, mpq(0))
    others = [key for key, _ in t.terms.items() if key[1] == 0 and key != unit_key]
    if not t0 or others:
        raise NotInvertibleError("h^0 part is not an invertible multiple of the unit")
    unit = alg.unit(rank)
    u = unit - t.scale(1 / t0)
    acc = unit
    for _ in range(t.order - 1):
        acc = unit + u * acc
    return acc.scale(1 / t0)


@dataclass(frozen=True)
class RMatrix:
    value: TensorElement
    inverse: TensorElement

    @property
    def algebra(self) -> HopfAlgebra:
        return self.value.algebra

    @property
    def instance(self) -> str:
        return self.value.algebra.name

    @property
    def order(self) -> int:
        return self.value.order

    @classmethod
    def from_value(cls, value: TensorElement) -> "RMatrix":
        if value.rank != 2:
            raise ValueError("an R-matrix has rank 2")
        return cls(value, tensor_inverse(value))

    def leg(self, r: int, s: int, rank: int, inverse: bool = False) -> TensorElement:
        """R_{r,s} (1-based, r != s) in H^{⊗rank}: first leg at r, second at s."""
        t = self.inverse if inverse else self.value
        return t.place((r - 1, s - 1), rank)


def build_R(instance: str = "uhsl2", order: int = 5) -> RMatrix:
    alg = get_algebra(instance, order)
    if not alg.deformed:
        return RMatrix(alg.unit(2), alg.unit(2))
    # exp((h/4) H⊗H)
    cartan = {}
    for m in range(order):
        cartan[(((0, m, 0), (0, m, 0)), m)] = mpq(1, 4) ** m / factorial(m)
    cartan = make_element(alg, 2, cartan)
    body: dict = {}
    for n in range(order):
        c = r_coefficient(n, order)
        for k, v in c.sparse().items():
            _add_into(body, (((0, 0, n), (n, 0, 0)), k), v)
    return RMatrix.from_value(cartan * make_element(alg, 2, body))


def ad_R(R: RMatrix, x: TensorElement) -> TensorElement:
    """R·x·R⁻¹."""
    _check_instance(R, x)
    return R.value * x * R.inverse


def ad_R_inverse(R: RMatrix, x: TensorElement) -> TensorElement:
    """R⁻¹·x·R."""
    _check_instance(R, x)
    return R.inverse * x * R.value


def _check_instance(R: RMatrix, x: TensorElement) -> None:
    if x.algebra is not R.algebra:
        raise ValueError(f"element lives in {x.algebra!r}, R in {R.algebra!r}")
    if x.rank != 2:
        raise ValueError("Ad(R) acts on rank-2 tensors")


def default_algebra_samples(algebra: HopfAlgebra, max_degree: int = 2) -> list:
    return [(_label(m), algebra.monomial(*m)) for m in pbw_monomials(max_degree)]


def _label(m) -> str:
    from .elements import pretty_monomial

    return pretty_monomial(m)


def quasitriangularity_report(R: RMatrix, samples=None) -> VerificationReport:
    """Intertwining on each sample, both fusion identities, QYBE and R·R⁻¹ = I.

    ``samples`` is a list of (label, element) pairs; PBW monomials of degree
    <= 2 by default.
    """
    alg, N = R.algebra, R.order
    if samples is None:
        samples = default_algebra_samples(alg)
    rep = VerificationReport("quasitriangular")
    unit2 = alg.unit(2)
    rep.add_residual("R·R⁻¹ = I", "R", R.value * R.inverse - unit2, N)
    rep.add_residual("R⁻¹·R = I", "R", R.inverse * R.value - unit2, N)
    for label, a in samples:
        d = alg.coproduct(a)
        rep.add_residual("R·Δ(a)·R⁻¹ = Δ^op(a)", f"a={label}", ad_R(R, d) - d.flip(), N)
    r12, r13, r23 = R.leg(1, 2, 3), R.leg(1, 3, 3), R.leg(2, 3, 3)
    lhs = alg.apply_at_leg(R.value, 0, alg.coproduct_mono, 2)
    rep.add_residual("(Δ⊗Id)(R) = R13·R23", "R", lhs - r13 * r23, N)
    lhs = alg.apply_at_leg(R.value, 1, alg.coproduct_mono, 2)
    rep.add_residual("(Id⊗Δ)(R) = R13·R12", "R", lhs - r13 * r12, N)
    rep.add_residual("R12·R13·R23 = R23·R13·R12", "R", r12 * r13 * r23 - r23 * r13 * r12, N)
    rep.notes.append(f"instance={R.instance} N={N}, {len(samples)} intertwining samples")
    return rep


def r_sigma(R: RMatrix, sigma, n: int) -> TensorElement:
    """R_Σ in H^{⊗2n}: rows a = 1..k, columns b = k..1, factor R_{2i_a-1, 2i_b}."""
    sigma = check_subset(sigma, n)
    out = R.algebra.unit(2 * n)
    for a in sigma:
        for b in reversed(sigma):
            out = out * R.leg(2 * a - 1, 2 * b, 2 * n)
    return out


def lemma31_residual(R: RMatrix, sigma, n: int):
    """Valuation of Δ̃_Σ(R) - R_Σ; predicted saturated (>= N)."""
    lhs = SlotCoalgebra(R.algebra, 2).delta_sigma_upper(R.value, sigma, n)
    return (lhs - r_sigma(R, sigma, n)).valuation()


def lemma31_report(R: RMatrix, n: int = 3) -> VerificationReport:
    """Δ̃_Σ(R) = R_Σ for every Σ ⊆ {1..n}."""
    rep = VerificationReport("lemma31")
    for sigma in subsets(range(1, n + 1)):
        v = lemma31_residual(R, sigma, n)
        rep.add_residual("Δ̃_Σ(R) = R_Σ", f"Σ={format_subset(sigma)} n={n}", v, R.order)
    rep.notes.append(f"instance={R.instance} N={R.order}")
    return rep


def classical_r(R: RMatrix) -> LieTensor:
    """(R - I)/h at h = 0, as an element of g⊗g."""
    unit = R.algebra.unit(2)
    if (R.value - unit).valuation() < 1:
        raise ValueError("R is not I + O(h)")
    return LieTensor.from_enveloping(R.value.coefficient_of_h(1))
