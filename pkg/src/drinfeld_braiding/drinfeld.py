"""Order-qualified membership in H' and (H⊗H)', and the truncated subset-coproduct residual."""
from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import binom_c, check_subset, subsets
from .elements import TensorElement, _add_into, make_element
from .series import Valuation
from .tensorcalc import SlotCoalgebra


class TruncationError(ValueError):
    """A check was requested beyond the truncation order."""


class UncertifiedInputError(ValueError):
    pass


@dataclass
class MembershipCertificate:
    element: str
    order: int
    checked_n: list = field(default_factory=list)
    valuations: dict = field(default_factory=dict)
    certified_order: int = 0
    verdict: str = "certified"

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "N": self.order,
            "valuations": {str(n): v.to_json() for n, v in sorted(self.valuations.items())},
            "certified_order": self.certified_order,
            "verdict": self.verdict,
        }

    def summary(self) -> str:
        vals = ", ".join(f"n={n}: {v}" for n, v in sorted(self.valuations.items()))
        return f"{self.element}: {self.verdict} to order {self.certified_order} ({vals})"


def _certify(coalg: SlotCoalgebra, x: TensorElement, max_n: int, label: str | None) -> MembershipCertificate:
    order = coalg.algebra.order
    if max_n > order:
        raise TruncationError(f"max_n={max_n} exceeds the truncation order N={order}")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    cert = MembershipCertificate(label or x.pretty(), order)
    powers = {0: coalg.delta_power(x, 0), 1: x}
    for n in range(1, max_n + 1):
        powers[n] = coalg.delta_power(x, n)
        v = coalg.delta_n(x, n, powers).valuation()
        cert.checked_n.append(n)
        cert.valuations[n] = v
        if int(v) < n:
            cert.verdict = "refuted"
            return cert
        cert.certified_order = n
    return cert


def certify_hprime(x: TensorElement, max_n: int | None = None, label: str | None = None) -> MembershipCertificate:
    """Valuations of δ_n(x) for n = 1..max_n; stops at the first n with val < n."""
    if x.rank != 1:
        raise ValueError("certify_hprime expects an element of H")
    return _certify(SlotCoalgebra(x.algebra, 1), x, x.order if max_n is None else max_n, label)


def certify_hprime_tensor2(x: TensorElement, max_n: int | None = None, label: str | None = None) -> MembershipCertificate:
    """Same as certify_hprime with δ̃_n built from Δ̃ on H⊗H."""
    if x.rank != 2:
        raise ValueError("certify_hprime_tensor2 expects a rank-2 tensor")
    return _certify(SlotCoalgebra(x.algebra, 2), x, x.order if max_n is None else max_n, label)


def lemma32_approximation(x: TensorElement, sigma, i: int, n: int | None = None) -> TensorElement:
    """Σ_{Σ'⊆Σ, |Σ'|<=i} (-1)^{i-|Σ'|} C^{i-|Σ'|}_{|Σ|-1-|Σ'|} Δ̃_Σ'(x)."""
    sigma = tuple(sigma)
    n = sigma[-1] if n is None and sigma else (n or 0)
    sigma = check_subset(sigma, n)
    coalg = SlotCoalgebra(x.algebra, 2)
    powers = {k: coalg.delta_power(x, k) for k in range(min(i, len(sigma)) + 1)}
    acc: dict = {}
    for sub in subsets(sigma):
        p = len(sub)
        if p > i:
            break
        coef = (-1) ** (i - p) * binom_c(i - p, len(sigma) - 1 - p)
        if not coef:
            continue
        term = coalg.embed(powers[p], sub, n) if sub else coalg.unit(n).scale(powers[0])
        for key, c in term.terms.items():
            _add_into(acc, key, c * coef)
    return make_element(x.algebra, 2 * n, acc)


def lemma32_residual(
    x: TensorElement,
    sigma,
    i: int,
    n: int | None = None,
    certificate: MembershipCertificate | None = None,
) -> Valuation:
    """Valuation of Δ̃_Σ(x) minus its degree-i approximation; predicted >= i + 1.

    ``x`` must be certified in (H⊗H)' to order >= min(|Σ|, N); a certificate
    is computed when none is given.
    """
    sigma = tuple(sigma)
    if len(sigma) <= i:
        raise ValueError(f"need |Σ| > i, got |Σ|={len(sigma)}, i={i}")
    n = (sigma[-1] if sigma else 0) if n is None else n
    need = min(len(sigma), x.order)
    if certificate is None:
        certificate = certify_hprime_tensor2(x, need)
    if certificate.certified_order < need:
        raise UncertifiedInputError(
            f"input certified only to order {certificate.certified_order}, need {need}"
        )
    coalg = SlotCoalgebra(x.algebra, 2)
    lhs = coalg.delta_sigma_upper(x, sigma, n)
    return (lhs - lemma32_approximation(x, sigma, i, n)).valuation()


# -- canonical sample sets ---------------------------------------------------

def hprime_samples(algebra) -> list[tuple[str, TensorElement]]:
    """{1, hE, hF, hH, (hE)(hF), hH·hE, h²E²} with their labels."""
    h = algebra.hbar()
    hE, hF, hH = h * algebra.E(), h * algebra.F(), h * algebra.H()
    return [
        ("1", algebra.unit()),
        ("hE", hE),
        ("hF", hF),
        ("hH", hH),
        ("hE*hF", hE * hF),
        ("hH*hE", hH * hE),
        ("h^2*E^2", algebra.hbar(2) * algebra.E() * algebra.E()),
    ]


def hprime2_samples(algebra, subset: str = "full") -> list[tuple[str, TensorElement]]:
    """Pure tensors a⊗b of the H' samples (all 49 for ``"full"``).

    ``subset="generators"`` restricts the legs to {1, hE, hF, hH}.
    """
    base = hprime_samples(algebra)
    if subset == "generators":
        base = base[:4]
    return [(f"{la}|{lb}", a.tensor(b)) for la, a in base for lb, b in base]


def hprime2_sums(algebra) -> list[tuple[str, TensorElement]]:
    """Two non-pure elements of (H⊗H)'."""
    h, one = algebra.hbar(), algebra.unit()
    hE, hF, hH = h * algebra.E(), h * algebra.F(), h * algebra.H()
    return [
        ("hE|1+1|hF", hE.tensor(one) + one.tensor(hF)),
        ("hH|1+1|hH", hH.tensor(one) + one.tensor(hH)),
    ]


def default_rank2_samples(algebra) -> list[tuple[str, TensorElement]]:
    return hprime2_samples(algebra) + hprime2_sums(algebra)
