"""Integer identities behind the stability of H'⊗H' under Ad(R).

Binomials follow the convention ``C^a_b = binom(b, a)`` and vanish whenever
``a > b`` (including negative ``b``).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .report import VerificationReport


def subsets(sigma: Sequence[int]) -> Iterator[tuple]:
    """All subsets of ``sigma``, by increasing size then lexicographically."""
    sigma = tuple(sigma)
    for k in range(len(sigma) + 1):
        yield from combinations(sigma, k)


def check_subset(sigma: Sequence[int], n: int) -> tuple:
    sigma = tuple(sigma)
    if any(b <= a for a, b in zip(sigma, sigma[1:])):
        raise ValueError(f"subset {sigma} is not strictly increasing")
    if sigma and (sigma[0] < 1 or sigma[-1] > n):
        raise ValueError(f"subset {sigma} not contained in 1..{n}")
    return sigma


def format_subset(sigma) -> str:
    return "{" + ",".join(map(str, sigma)) + "}"


@dataclass(frozen=True)
class SubsetIndex:
    n: int
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", check_subset(self.members, self.n))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_set(self) -> frozenset:
        return frozenset(self.members)


def binom_c(a: int, b: int) -> int:
    """C^a_b = binom(b, a), zero when a > b or a < 0."""
    if a < 0 or b < a:
        return 0
    return comb(b, a)


def lemma33_sums(r: int, s: int, t: int) -> tuple[int, int]:
    """The two alternating sums over d = 0..t."""
    sum_a = sum((-1) ** d * binom_c(r, d - 1) * binom_c(d, t) for d in range(t + 1))
    sum_b = sum((-1) ** d * binom_c(r, d + s) * binom_c(d, t) for d in range(t + 1))
    return sum_a, sum_b


def lemma33_check(r: int, s: int, t: int, report: VerificationReport | None = None) -> bool:
    if not r < t:
        raise ValueError(f"need r < t, got r={r}, t={t}")
    sum_a, sum_b = lemma33_sums(r, s, t)
    want_a = -((-1) ** r)
    ok = sum_a == want_a and sum_b == 0
    if report is not None:
        report.add(
            "alternating-binomial",
            f"r={r} s={s} t={t}",
            ok,
            sum_a=sum_a,
            expected_a=want_a,
            sum_b=sum_b,
            expected_b=0,
        )
    return ok


def lemma33_report(max_t: int = 12, max_s: int = 8) -> VerificationReport:
    """Exhaustive check over 0 <= r < t <= max_t, 0 <= s <= max_s.

    Only failures are stored as individual checks; the count is in the notes.
    """
    rep = VerificationReport("lemma33")
    count = 0
    failures = VerificationReport("lemma33")
    for t in range(1, max_t + 1):
        for r in range(t):
            for s in range(max_s + 1):
                count += 1
                sum_a, sum_b = lemma33_sums(r, s, t)
                if sum_a != -((-1) ** r) or sum_b != 0:
                    lemma33_check(r, s, t, failures)
    rep.add(
        "alternating-binomial sums (a) = -(-1)^r and (b) = 0",
        f"0<=r<t<={max_t}, 0<=s<={max_s}",
        not failures.checks,
        tuples_checked=count,
        failures=len(failures.checks),
    )
    rep.checks.extend(failures.checks)
    rep.notes.append(f"{count} (r, s, t) tuples checked")
    return rep


def _indicator(cond: bool) -> int:
    return 1 if cond else 0


def eprime_value(n: int, j: int, sigma1: Sequence[int], sigma2: Sequence[int]) -> int:
    """The combinatorial coefficient (E')_{Σ',Σ''} by explicit subset enumeration."""
    s1 = frozenset(check_subset(sigma1, n))
    s2 = frozenset(check_subset(sigma2, n))
    if len(s1) > j:
        raise ValueError(f"|Σ'| = {len(s1)} exceeds j = {j}")
    union = s1 | s2
    rest = [i for i in range(1, n + 1) if i not in union]
    p = len(s1)
    total = 0
    for extra in subsets(rest):
        size = len(union) + len(extra)
        if size > j:
            total += (-1) ** (n - size) * (-1) ** (j - p) * binom_c(j - p, size - 1 - p)
    return total + (-1) ** (n - p) * _indicator(s2 <= s1)


def eprime_case(n: int, j: int, sigma1, sigma2) -> str:
    s1, s2 = frozenset(sigma1), frozenset(sigma2)
    if s2 <= s1:
        return "I"
    if len(s1 | s2) > j:
        return "II"
    return "III"


def eprime_grouped(n: int, j: int, sigma1, sigma2) -> int:
    """Closed form obtained by grouping the subsets Σ by cardinality."""
    s1, s2 = frozenset(sigma1), frozenset(sigma2)
    p, u = len(s1), len(s1 | s2)
    case = eprime_case(n, j, s1, s2)
    sign = (-1) ** (j - p)
    if case == "I":
        return sum(
            (-1) ** (n - d) * sign * binom_c(j - p, d - 1 - p) * binom_c(d - p, n - p)
            for d in range(j + 1, n + 1)
        ) + (-1) ** (n - p)
    if case == "II":
        return sum(
            (-1) ** (n - d) * sign * binom_c(j - p, d - 1 - p) * binom_c(d - u, n - u)
            for d in range(u, n + 1)
        )
    return sum(
        (-1) ** (n - d) * sign * binom_c(j - p, d - 1 - p) * binom_c(d - u, n - u)
        for d in range(j + 1, n + 1)
    )


def eprime_admissible(n: int, j: int, sigma1, sigma2) -> bool:
    """Tuples on which the nullity is claimed.

    j < n, |Σ'| <= j, and |Σ'∪Σ''| <= |Σ'| + (i - j) for some i <= n - 1,
    i.e. |Σ'∪Σ''| - |Σ'| <= n - 1 - j.  Pairs beyond that bound carry a
    vanishing A-coefficient, so their (E') value is irrelevant.
    """
    s1, s2 = frozenset(sigma1), frozenset(sigma2)
    p, u = len(s1), len(s1 | s2)
    return 0 <= j < n and p <= j and u - p <= n - 1 - j


def eprime_report(max_n: int = 6) -> VerificationReport:
    """Exhaustive nullity and regrouping checks for all n <= max_n."""
    rep = VerificationReport("eprime")
    admissible = nonzero = regroup_bad = 0
    loose_total = loose_nonzero = 0
    cases = {"I": 0, "II": 0, "III": 0}
    for n in range(1, max_n + 1):
        universe = tuple(range(1, n + 1))
        all_subsets = list(subsets(universe))
        for j in range(n):
            for s1 in all_subsets:
                if len(s1) > j:
                    continue
                for s2 in all_subsets:
                    value = eprime_value(n, j, s1, s2)
                    if value != eprime_grouped(n, j, s1, s2):
                        regroup_bad += 1
                        rep.add("grouped closed form", f"n={n} j={j} S'={s1} S''={s2}", False)
                    if len(set(s1) | set(s2)) <= n - 1:
                        loose_total += 1
                        loose_nonzero += value != 0
                    if not eprime_admissible(n, j, s1, s2):
                        continue
                    admissible += 1
                    cases[eprime_case(n, j, s1, s2)] += 1
                    if value != 0:
                        nonzero += 1
                        rep.add("E' nullity", f"n={n} j={j} S'={s1} S''={s2}", False, value=value)
    rep.add(
        "E' nullity on admissible tuples",
        f"n<={max_n}",
        nonzero == 0,
        tuples_checked=admissible,
        nonzero=nonzero,
        case_counts=cases,
    )
    rep.add(
        "grouping by cardinality matches enumeration",
        f"n<={max_n}, all tuples with |S'|<=j",
        regroup_bad == 0,
        mismatches=regroup_bad,
    )
    rep.notes.append(
        f"{admissible} admissible tuples (cases I/II/III: {cases['I']}/{cases['II']}/{cases['III']})"
    )
    rep.notes.append(
        f"informational: {loose_nonzero} of {loose_total} tuples with only |S'∪S''| <= n-1 "
        "(no bound tying |S'∪S''| to j) have nonzero E'"
    )
    return rep
