"""Ad(R) as a braiding: braided-Hopf axioms, stability of H'⊗H', braid-group action."""
from __future__ import annotations

from dataclasses import dataclass, field

from .drinfeld import MembershipCertificate, UncertifiedInputError, certify_hprime_tensor2
from .elements import TensorElement
from .report import VerificationReport
from .rmatrix import RMatrix, ad_R, ad_R_inverse, default_algebra_samples
from .tensorcalc import tilde_coproduct


@dataclass(frozen=True)
class BraidWord:
    n_strands: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.n_strands:
                raise ValueError(f"generator {x} out of range for {self.n_strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, n_strands: int) -> "BraidWord":
        text = text.strip()
        return cls(n_strands, tuple(int(p) for p in text.split(",")) if text else ())

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n_strands, tuple(-x for x in reversed(self.letters)))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.n_strands != other.n_strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def __str__(self):
        return ",".join(map(str, self.letters)) or "(empty)"


def _swap(i: int, n: int) -> tuple:
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def braid_generator(R: RMatrix, i: int, x: TensorElement) -> TensorElement:
    """β_i^{±1} on H^{⊗n}: β_i(x) = σ_{i,i+1}(R_{i,i+1}·x·R_{i,i+1}⁻¹)."""
    n = x.rank
    k = abs(i)
    r, rinv = R.leg(k, k + 1, n), R.leg(k, k + 1, n, inverse=True)
    swap = _swap(k, n)
    if i > 0:
        return (r * x * rinv).permute(swap)
    return rinv * x.permute(swap) * r


def braid_act(R: RMatrix, word: BraidWord, x: TensorElement) -> TensorElement:
    """Apply the letters of ``word`` from left to right."""
    if x.rank != word.n_strands:
        raise ValueError(f"rank {x.rank} does not match {word.n_strands} strands")
    for letter in word.letters:
        x = braid_generator(R, letter, x)
    return x


def conjugate(r: TensorElement, rinv: TensorElement, x: TensorElement) -> TensorElement:
    return r * x * rinv


def rank3_samples(algebra) -> list:
    """A few rank-3 tensors built from low-degree monomials."""
    E, F, H, one = algebra.E(), algebra.F(), algebra.H(), algebra.unit()
    return [
        ("E|F|H", E.tensor(F).tensor(H)),
        ("F|E|1", F.tensor(E).tensor(one)),
        ("H|1|E", H.tensor(one).tensor(E)),
        ("E*F|1|F", (E * F).tensor(one).tensor(F)),
    ]


def rank2_samples(algebra, max_degree: int = 1) -> list:
    base = default_algebra_samples(algebra, max_degree)
    return [(f"{la}|{lb}", a.tensor(b)) for la, a in base for lb, b in base]


def braided_axioms_report(R: RMatrix, algebra_samples=None, tensor_samples=None, rank3=None) -> VerificationReport:
    """𝔉 = Ad(R): 𝔉∘Δ = Δ^op, both hexagons, operator QYBE, and the doubled-R check.

    The hexagons are operator identities on H⊗H, so they are evaluated on
    rank-2 samples; the operator QYBE acts on H^{⊗3}.
    """
    alg, N = R.algebra, R.order
    if algebra_samples is None:
        algebra_samples = default_algebra_samples(alg, 2)
    if tensor_samples is None:
        tensor_samples = rank2_samples(alg)
    if rank3 is None:
        rank3 = rank3_samples(alg)
    rep = VerificationReport("braid")

    for label, a in algebra_samples:
        d = alg.coproduct(a)
        rep.add_residual("𝔉∘Δ = Δ^op", f"a={label}", ad_R(R, d) - d.flip(), N)

    r12, r13, r23 = R.leg(1, 2, 3), R.leg(1, 3, 3), R.leg(2, 3, 3)
    i12, i13, i23 = (R.leg(a, b, 3, inverse=True) for a, b in ((1, 2), (1, 3), (2, 3)))
    for label, x in tensor_samples:
        fx = ad_R(R, x)
        lhs = alg.apply_at_leg(fx, 0, alg.coproduct_mono, 2)
        dx = alg.apply_at_leg(x, 0, alg.coproduct_mono, 2)
        rhs = conjugate(r13, i13, conjugate(r23, i23, dx))
        rep.add_residual("(Δ⊗Id)∘𝔉 = 𝔉13∘𝔉23∘(Δ⊗Id)", f"x={label}", lhs - rhs, N)
        lhs = alg.apply_at_leg(fx, 1, alg.coproduct_mono, 2)
        dx = alg.apply_at_leg(x, 1, alg.coproduct_mono, 2)
        rhs = conjugate(r13, i13, conjugate(r12, i12, dx))
        rep.add_residual("(Id⊗Δ)∘𝔉 = 𝔉13∘𝔉12∘(Id⊗Δ)", f"x={label}", lhs - rhs, N)

    for label, x in rank3:
        lhs = conjugate(r12, i12, conjugate(r13, i13, conjugate(r23, i23, x)))
        rhs = conjugate(r23, i23, conjugate(r13, i13, conjugate(r12, i12, x)))
        rep.add_residual("𝔉12∘𝔉13∘𝔉23 = 𝔉23∘𝔉13∘𝔉12", f"x={label}", lhs - rhs, N)

    # H⊗H is quasitriangular with R13·R24 for the coproduct Δ̃
    big, big_inv = R.leg(1, 3, 4) * R.leg(2, 4, 4), R.leg(2, 4, 4, inverse=True) * R.leg(1, 3, 4, inverse=True)
    for label, x in tensor_samples:
        d = tilde_coproduct(x)
        rep.add_residual("R̃·Δ̃(x)·R̃⁻¹ = Δ̃^op(x), R̃ = R13·R24", f"x={label}", conjugate(big, big_inv, d) - d.permute((2, 3, 0, 1)), N)

    is_identity = all(ad_R(R, x) == x for _, x in tensor_samples)
    is_flip = all(ad_R(R, x) == x.flip() for _, x in tensor_samples)
    note = "𝔉 acts as the identity on the samples" if is_identity else "𝔉 moves some samples"
    rep.add("𝔉 differs from the flip σ", f"{len(tensor_samples)} rank-2 samples", not is_flip, note=note)
    if is_identity:
        rep.notes.append("degenerate braiding: 𝔉 = Id (R = I), which is not the flip")
    rep.notes.append(f"instance={R.instance} N={N}")
    return rep


@dataclass
class Theorem21Certificate:
    label: str
    source: MembershipCertificate
    forward: MembershipCertificate
    inverse: MembershipCertificate
    roundtrip: bool
    max_n: int = 0
    notes: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return (
            self.forward.certified_order >= self.max_n
            and self.inverse.certified_order >= self.max_n
            and self.roundtrip
        )

    def to_dict(self) -> dict:
        return {
            "element": self.label,
            "input": self.source.to_dict(),
            "ad_R": self.forward.to_dict(),
            "ad_R_inverse": self.inverse.to_dict(),
            "roundtrip": self.roundtrip,
            "certified": self.certified,
        }


def theorem21_certify(R: RMatrix, x: TensorElement, max_n: int | None = None, label: str | None = None) -> Theorem21Certificate:
    """Certify ad_R(x) and ad_{R⁻¹}(x) in (H⊗H)' after certifying x itself."""
    max_n = R.order if max_n is None else max_n
    label = label or x.pretty()
    source = certify_hprime_tensor2(x, max_n, label)
    if source.certified_order < max_n:
        raise UncertifiedInputError(f"{label} is only certified to order {source.certified_order}")
    fx = ad_R(R, x)
    gx = ad_R_inverse(R, x)
    forward = certify_hprime_tensor2(fx, max_n, f"Ad(R)({label})")
    inverse = certify_hprime_tensor2(gx, max_n, f"Ad(R⁻¹)({label})")
    roundtrip = ad_R_inverse(R, fx) == x and ad_R(R, gx) == x
    return Theorem21Certificate(label, source, forward, inverse, roundtrip, max_n)


def theorem21_report(R: RMatrix, samples, max_n: int | None = None) -> tuple[VerificationReport, list]:
    max_n = R.order if max_n is None else max_n
    rep = VerificationReport("theorem21")
    certs = []
    for label, x in samples:
        cert = theorem21_certify(R, x, max_n, label)
        certs.append(cert)
        rep.add(
            "Ad(R)^{±1} maps (H⊗H)' into (H⊗H)'",
            f"x={label}",
            cert.certified,
            forward=cert.forward.to_dict(),
            inverse=cert.inverse.to_dict(),
            roundtrip=cert.roundtrip,
        )
    rep.notes.append(f"certified to order {max_n} on {len(samples)} samples (instance={R.instance}, N={R.order})")
    return rep, certs
