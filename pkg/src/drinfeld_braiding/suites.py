"""Named verification suites and the aggregate runner behind the CLI."""
from __future__ import annotations

import time
import traceback
from dataclasses import dataclass, field
from itertools import product

from .algebra import INSTANCES, get_algebra
from .braiding import (
    BraidWord,
    braid_act,
    braided_axioms_report,
    rank3_samples,
    theorem21_report,
)
from .classical import (
    bialgebra_checks_report,
    bracket_lift,
    copoisson_residuals,
    cybe_residual,
    poisson_bracket,
    semiclassical_class,
)
from .combinatorics import eprime_report, format_subset, lemma33_report, subsets
from .drinfeld import (
    certify_hprime,
    certify_hprime_tensor2,
    default_rank2_samples,
    hprime_samples,
    lemma32_residual,
)
from .elements import scaled_valuation
from .hopf import hopf_axioms_report
from .report import VerificationReport
from .rmatrix import build_R, classical_r, default_algebra_samples, lemma31_report, quasitriangularity_report
from .textio import load_samples

SUITES = (
    "hopf",
    "quasitriangular",
    "lemma31",
    "lemma32",
    "lemma33",
    "eprime",
    "hprime",
    "theorem21",
    "classical",
    "braid",
)
ALIASES = {"braided": ("braid",), "combinatorics": ("lemma33", "eprime"), "all": SUITES}


def resolve_suites(names) -> tuple:
    chosen = set()
    for name in names:
        if name in ALIASES:
            chosen.update(ALIASES[name])
        elif name in SUITES:
            chosen.add(name)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return tuple(s for s in SUITES if s in chosen)


@dataclass
class RunConfig:
    order: int = 5
    instance: str = "uhsl2"
    suites: tuple = SUITES
    sample_file: str | None = None
    max_rank: int = 3
    max_n: int = 6
    max_t: int = 12
    max_s: int = 8
    include_timing: bool = False

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.max_rank < 2:
            raise ValueError("max_rank must be at least 2")
        if self.instance not in INSTANCES:
            raise ValueError(f"unknown instance {self.instance!r}")
        self.suites = resolve_suites(self.suites)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "instance": self.instance,
            "suites": list(self.suites),
            "sample_file": self.sample_file,
            "max_rank": self.max_rank,
            "max_n": self.max_n,
            "max_t": self.max_t,
            "max_s": self.max_s,
        }


@dataclass
class Context:
    config: RunConfig
    algebra: object = None
    R: object = None
    samples: object = None

    def __post_init__(self):
        self.algebra = get_algebra(self.config.instance, self.config.order)
        self.R = build_R(self.config.instance, self.config.order)
        if self.config.sample_file:
            self.samples = load_samples(self.config.sample_file, self.algebra)

    def rank1(self) -> list:
        if self.samples is not None and self.samples.of_rank(1):
            return self.samples.of_rank(1)
        return hprime_samples(self.algebra)

    def rank2(self) -> list:
        if self.samples is not None and self.samples.of_rank(2):
            return self.samples.of_rank(2)
        return default_rank2_samples(self.algebra)

    def rank3(self) -> list:
        if self.samples is not None and self.samples.of_rank(3):
            return self.samples.of_rank(3)
        return rank3_samples(self.algebra)


# -- individual suites -------------------------------------------------------

def suite_hopf(ctx: Context) -> VerificationReport:
    return hopf_axioms_report(ctx.algebra, 3)


def suite_quasitriangular(ctx: Context) -> VerificationReport:
    samples = None
    if ctx.samples is not None and ctx.samples.of_rank(1):
        samples = ctx.samples.of_rank(1)
    return quasitriangularity_report(ctx.R, samples)


def suite_lemma31(ctx: Context) -> VerificationReport:
    return lemma31_report(ctx.R, ctx.config.max_rank)


def suite_lemma32(ctx: Context) -> VerificationReport:
    rep = VerificationReport("lemma32")
    n = ctx.config.max_rank
    N = ctx.config.order
    skipped = []
    for label, x in ctx.rank2():
        need = min(n, N)
        cert = certify_hprime_tensor2(x, need, label)
        if cert.certified_order < need:
            skipped.append(label)
            continue
        for sigma in subsets(range(1, n + 1)):
            for i in range(min(len(sigma), N)):
                v = lemma32_residual(x, sigma, i, n, cert)
                rep.add_residual(
                    "Δ̃_Σ(x) = Σ_{|Σ'|<=i} (-1)^{i-|Σ'|} C Δ̃_Σ'(x) + O(h^{i+1})",
                    f"x={label} Σ={format_subset(sigma)} i={i}",
                    v,
                    i + 1,
                )
    if skipped:
        rep.notes.append("not certified, skipped: " + ", ".join(skipped))
    rep.notes.append(f"instance={ctx.config.instance} N={N}, Σ ⊆ {{1..{n}}}")
    return rep


def suite_lemma33(ctx: Context) -> VerificationReport:
    return lemma33_report(ctx.config.max_t, ctx.config.max_s)


def suite_eprime(ctx: Context) -> VerificationReport:
    return eprime_report(ctx.config.max_n)


def suite_hprime(ctx: Context) -> VerificationReport:
    rep = VerificationReport("hprime")
    N = ctx.config.order
    alg = ctx.algebra
    samples = ctx.rank1()
    certified = []
    for label, x in samples:
        cert = certify_hprime(x, N, label)
        rep.add("membership in H'", f"x={label}", cert.certified, certificate=cert.to_dict())
        if cert.certified:
            certified.append((label, x))
            eps = alg.unit().scale(alg.counit(x))
            rep.add_residual("x - ε(x)1 ∈ hH", f"x={label}", x - eps, 1)
    for (la, a), (lb, b) in product(certified, repeat=2):
        ab = a * b
        cert = certify_hprime(ab, N, f"{la}*{lb}")
        rep.add("H' closed under products", f"a={la} b={lb}", cert.certified, certificate=cert.to_dict())
        comm = ab - b * a
        lhs, rhs = scaled_valuation(comm), int(scaled_valuation(a)) + int(scaled_valuation(b)) + 1
        rep.add(
            "commutative mod hH': val'([a,b]) >= val'(a) + val'(b) + 1",
            f"a={la} b={lb}",
            int(lhs) >= min(rhs, N),
            lhs=lhs.to_json(),
            rhs=rhs,
        )
    one = alg.unit()
    legs = [(label, x, certify_hprime(x, N).certified) for label, x in samples + [("E", alg.E())]]
    for (la, a, ca), (lb, b, cb) in product(legs, repeat=2):
        tcert = certify_hprime_tensor2(a.tensor(b), N)
        rep.add("(H⊗H)' test agrees with H'⊗H' on pure tensors", f"{la}|{lb}", tcert.certified == (ca and cb))
    rep.add("E ∉ H'", "x=E", not certify_hprime(alg.E(), N).certified)
    rep.add("E⊗1 ∉ (H⊗H)'", "x=E|1", not certify_hprime_tensor2(alg.E().tensor(one), N).certified)
    rep.notes.append("val' is the valuation in the lattice spanned by h^{deg m}·m")
    rep.notes.append(f"instance={ctx.config.instance} N={N}, {len(samples)} samples")
    return rep


def suite_theorem21(ctx: Context) -> VerificationReport:
    rep, _ = theorem21_report(ctx.R, ctx.rank2(), ctx.config.order)
    return rep


def poisson_report(algebra, samples) -> VerificationReport:
    """Antisymmetry, Leibniz and Jacobi of the bracket on H'/hH', all exact."""
    rep = VerificationReport("poisson")
    N = algebra.order
    classes = {label: semiclassical_class(x) for label, x in samples}
    brackets = {}
    for (la, a), (lb, b) in product(samples, repeat=2):
        brackets[la, lb] = poisson_bracket(a, b)
    for (la, a), (lb, b) in product(samples, repeat=2):
        ab = a * b
        rep.add(
            "class(ab) = class(a)·class(b)",
            f"a={la} b={lb}",
            semiclassical_class(ab).agrees_with(classes[la] * classes[lb]),
        )
        if la <= lb:
            s = brackets[la, lb] + brackets[lb, la]
            rep.add("{a,b} = -{b,a}", f"a={la} b={lb}", s.agrees_with(s * 0), value=s.render())
    lifts = {(la, lb): bracket_lift(a, b) for (la, a), (lb, b) in product(samples, repeat=2)}
    for (la, a), (lb, b), (lc, c) in product(samples, repeat=3):
        lhs = poisson_bracket(a, b * c)
        rhs = brackets[la, lb] * classes[lc] + classes[lb] * brackets[la, lc]
        rep.add("{a,bc} = {a,b}c + b{a,c}", f"a={la} b={lb} c={lc}", lhs.agrees_with(rhs))
        if la <= lb <= lc:
            jac = (
                poisson_bracket(a, lifts[lb, lc], N - 1)
                + poisson_bracket(b, lifts[lc, la], N - 1)
                + poisson_bracket(c, lifts[la, lb], N - 1)
            )
            rep.add("Jacobi", f"a={la} b={lb} c={lc}", jac.agrees_with(jac * 0), value=jac.render(), precision=jac.precision)
    rep.notes.append(
        f"instance={algebra.name} N={N}: brackets exact in degree <= {N - 2}, Jacobi in degree <= {N - 3}"
    )
    return rep


def suite_classical(ctx: Context) -> VerificationReport:
    rep = VerificationReport("classical")
    r = classical_r(ctx.R)
    rep.add("classical r-matrix", "(R - I)/h at h=0", True, r=r.render())
    res = cybe_residual(r)
    rep.add("CYBE for r", "r", not res, value=res.render())
    rep.extend(bialgebra_checks_report(r))
    for name, res in copoisson_residuals(ctx.algebra, r).items():
        rep.add("δ(x) = ((Δ - Δ^op)(x)/h) at h=0", f"x={name}", not res, value=res.render())
    samples = [(l, x) for l, x in ctx.rank1() if certify_hprime(x, ctx.config.order).certified]
    rep.extend(poisson_report(ctx.algebra, samples))
    return rep


def _all_words(n_strands: int, max_len: int):
    gens = [g for i in range(1, n_strands) for g in (i, -i)]
    for length in range(max_len + 1):
        for letters in product(gens, repeat=length):
            yield BraidWord(n_strands, letters)


def suite_braid(ctx: Context) -> VerificationReport:
    rep = braided_axioms_report(ctx.R, tensor_samples=None, rank3=ctx.rank3())
    N = ctx.config.order
    samples = ctx.rank3()
    for label, x in samples:
        a = braid_act(ctx.R, BraidWord(3, (1, 2, 1)), x)
        b = braid_act(ctx.R, BraidWord(3, (2, 1, 2)), x)
        rep.add_residual("β1β2β1 = β2β1β2", f"x={label}", a - b, N)
    label, x = samples[0]
    words = list(_all_words(3, 4))
    bad = [str(w) for w in words if braid_act(ctx.R, w + w.inverse(), x) != x]
    rep.add("w·w⁻¹ acts as the identity", f"x={label}, {len(words)} words of length <= 4", not bad, failures=bad)
    return rep


RUNNERS = {
    "hopf": suite_hopf,
    "quasitriangular": suite_quasitriangular,
    "lemma31": suite_lemma31,
    "lemma32": suite_lemma32,
    "lemma33": suite_lemma33,
    "eprime": suite_eprime,
    "hprime": suite_hprime,
    "theorem21": suite_theorem21,
    "classical": suite_classical,
    "braid": suite_braid,
}


@dataclass
class RunResult:
    config: RunConfig
    reports: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(r.overall for r in self.reports)

    def to_dict(self) -> dict:
        out = {
            "config": self.config.to_dict(),
            "overall": self.overall,
            "suites": [r.to_dict() for r in self.reports],
        }
        if self.config.include_timing:
            out["timing_seconds"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def render_text(self, verbose: bool = False) -> str:
        lines = []
        for r in self.reports:
            text = r.render_text(verbose)
            head, _, rest = text.partition("\n")
            lines.append(f"{head}  ({self.timings.get(r.suite, 0.0):.2f}s)" + ("\n" + rest if rest else ""))
        lines.append(("PASS" if self.overall else "FAIL") + f": {len(self.reports)} suites")
        return "\n".join(lines)


def run_suites(config: RunConfig) -> RunResult:
    result = RunResult(config)
    ctx = Context(config)
    for name in config.suites:
        start = time.perf_counter()
        try:
            rep = RUNNERS[name](ctx)
            rep.suite = name
        except Exception as exc:  # one broken suite must not take down the others
            rep = VerificationReport(name)
            rep.add("suite completed", name, False, error=f"{type(exc).__name__}: {exc}")
            rep.notes.append(traceback.format_exc(limit=3).strip().splitlines()[-1])
        result.timings[name] = time.perf_counter() - start
        result.reports.append(rep)
    return result
