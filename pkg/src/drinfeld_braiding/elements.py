"""Sparse elements of H^{⊗n} over Q[h]/h^N.

An element is stored flat: ``{(key, k): c}`` where ``key`` is an n-tuple of
PBW monomials ``(f_exp, h_exp, e_exp)`` (meaning F^f H^h E^e), ``k`` is the
power of h, and ``c`` a nonzero ``mpq``.  Terms with ``k >= N`` are never
stored, which is what keeps iterated coproducts tractable.
"""
from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from gmpy2 import mpq

from .series import ScalarSeries, Valuation, as_rational, format_series

if TYPE_CHECKING:
    from .algebra import HopfAlgebra

ONE = (0, 0, 0)


class InstanceMismatchError(ValueError):
    pass


def format_monomial(m) -> str:
    f, h, e = m
    return f"F^{f} H^{h} E^{e}"


def pretty_monomial(m) -> str:
    parts = []
    for letter, exp in zip("FHE", m):
        if exp == 1:
            parts.append(letter)
        elif exp:
            parts.append(f"{letter}^{exp}")
    return "·".join(parts) if parts else "1"


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class TensorElement:
    """Element of H^{⊗rank} with coefficients in Q[h]/h^N."""

    __slots__ = ("algebra", "rank", "terms")

    def __init__(self, algebra: "HopfAlgebra", rank: int, terms: dict | None = None):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.algebra = algebra
        self.rank = rank
        n = algebra.order
        clean = {}
        if terms:
            for (key, k), c in terms.items():
                if k < n and c:
                    clean[(key, k)] = c
        self.terms = clean

    # -- construction -------------------------------------------------
    @classmethod
    def from_series(cls, algebra, key: Sequence, series) -> "TensorElement":
        key = tuple(tuple(m) for m in key)
        if not isinstance(series, ScalarSeries):
            series = ScalarSeries.constant(series, algebra.order)
        terms = {(key, k): c for k, c in series.sparse().items()}
        return make_element(algebra, len(key), terms)

    # -- basic queries ------------------------------------------------
    @property
    def order(self) -> int:
        return self.algebra.order

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def keys(self) -> list:
        return sorted({key for key, _ in self.terms})

    def coefficient(self, key) -> ScalarSeries:
        key = tuple(tuple(m) for m in key)
        return ScalarSeries.from_sparse(
            {k: c for (kk, k), c in self.terms.items() if kk == key}, self.order
        )

    def grouped(self) -> dict:
        """``{key: {k: c}}`` view."""
        out: dict = defaultdict(dict)
        for (key, k), c in self.terms.items():
            out[key][k] = c
        return dict(out)

    def items(self) -> Iterator[tuple]:
        """Canonical ``(key, ScalarSeries)`` pairs sorted by monomial tuples."""
        g = self.grouped()
        for key in sorted(g):
            yield key, ScalarSeries.from_sparse(g[key], self.order)

    def valuation(self) -> Valuation:
        return tensor_valuation(self)

    def max_hpower(self) -> int:
        return max((k for _, k in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "TensorElement") -> None:
        if self.algebra is not other.algebra:
            raise InstanceMismatchError(
                f"{self.algebra.name}/N={self.order} vs {other.algebra.name}/N={other.order}"
            )
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def _lift(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return other
        if isinstance(other, ScalarSeries):
            return self.algebra.unit(self.rank) * other
        return self.algebra.unit(self.rank) * as_rational(other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(terms, key, c)
        return make_element(self.algebra, self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return make_element(self.algebra, self.rank, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "TensorElement":
        if isinstance(c, ScalarSeries):
            n = self.order
            terms: dict = {}
            cs = c.sparse()
            for (key, k), v in self.terms.items():
                for j, w in cs.items():
                    if k + j < n:
                        _add_into(terms, (key, k + j), v * w)
            return make_element(self.algebra, self.rank, terms)
        c = as_rational(c)
        if not c:
            return make_element(self.algebra, self.rank, {})
        return make_element(self.algebra, self.rank, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need tensor_inverse")
        result = self.algebra.unit(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def commutator(self, other: "TensorElement") -> "TensorElement":
        return self * other - other * self

    def times_h(self, power: int = 1) -> "TensorElement":
        n = self.order
        return make_element(
            self.algebra,
            self.rank,
            {(key, k + power): c for (key, k), c in self.terms.items() if k + power < n},
        )

    def divide_by_h(self, power: int = 1) -> "TensorElement":
        """Exact division by h^power; raises if some term has lower h-degree.

        The quotient is only determined modulo h^(N - power).
        """
        if any(k < power for _, k in self.terms):
            raise ArithmeticError(f"element is not divisible by h^{power}")
        return make_element(
            self.algebra, self.rank, {(key, k - power): c for (key, k), c in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (
                self.algebra is other.algebra
                and self.rank == other.rank
                and self.terms == other.terms
            )
        if isinstance(other, (int, ScalarSeries)) or type(other).__name__ in ("mpq", "Fraction"):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra.name, self.rank, frozenset(self.terms.items())))

    # -- leg manipulation ---------------------------------------------
    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Outer product x ⊗ y (rank adds)."""
        if self.algebra is not other.algebra:
            raise InstanceMismatchError("tensor of elements from different instances")
        n = self.order
        terms: dict = {}
        for (ka, a), ca in self.terms.items():
            for (kb, b), cb in other.terms.items():
                if a + b < n:
                    _add_into(terms, (ka + kb, a + b), ca * cb)
        return make_element(self.algebra, self.rank + other.rank, terms)

    def permute(self, perm: Sequence[int]) -> "TensorElement":
        """Leg ``i`` of the result is leg ``perm[i]`` of ``self`` (0-based)."""
        if sorted(perm) != list(range(self.rank)):
            raise ValueError(f"not a permutation of {self.rank} legs: {perm}")
        terms = {(tuple(key[p] for p in perm), k): c for (key, k), c in self.terms.items()}
        return make_element(self.algebra, self.rank, terms)

    def flip(self) -> "TensorElement":
        if self.rank != 2:
            raise ValueError("flip needs rank 2")
        return self.permute((1, 0))

    def place(self, positions: Sequence[int], rank: int) -> "TensorElement":
        """Put leg ``m`` at position ``positions[m]`` (0-based) of a rank-``rank`` tensor."""
        if len(positions) != self.rank or len(set(positions)) != len(positions):
            raise ValueError("positions must be distinct, one per leg")
        if positions and (min(positions) < 0 or max(positions) >= rank):
            raise ValueError("position out of range")
        terms = {}
        for (key, k), c in self.terms.items():
            new = [ONE] * rank
            for m, p in zip(key, positions):
                new[p] = m
            terms[(tuple(new), k)] = c
        return make_element(self.algebra, rank, terms)

    def specialize_h0(self) -> "TensorElement":
        """Keep the h^0 part, viewed in the undeformed algebra U(sl2)^{⊗rank}."""
        from .algebra import get_algebra

        target = get_algebra("trivial", self.order)
        return make_element(
            target, self.rank, {(key, 0): c for (key, k), c in self.terms.items() if k == 0}
        )

    def coefficient_of_h(self, k: int) -> "TensorElement":
        """The h^k coefficient as an h-free element of the same algebra."""
        return make_element(
            self.algebra, self.rank, {(key, 0): c for (key, kk), c in self.terms.items() if kk == k}
        )

    def leading_part(self) -> "TensorElement":
        v = self.valuation()
        if v.saturated:
            return self
        return self.coefficient_of_h(int(v))

    # -- rendering ----------------------------------------------------
    def canonical(self) -> str:
        """One ``m1 | m2 | ... : <series>`` line per term, sorted by monomials."""
        lines = []
        for key, s in self.items():
            lines.append(" | ".join(format_monomial(m) for m in key) + " : " + str(s))
        return "\n".join(lines) if lines else "0"

    def pretty(self) -> str:
        """Human-readable form grouped by powers of h."""
        if not self.terms:
            return "0"
        by_k: dict = defaultdict(dict)
        for (key, k), c in self.terms.items():
            by_k[k][key] = c
        chunks = []
        for k in sorted(by_k):
            pieces = []
            for key in sorted(by_k[k]):
                c = by_k[k][key]
                word = "⊗".join(pretty_monomial(m) for m in key)
                if c == 1:
                    pieces.append(word)
                elif c == -1:
                    pieces.append("-" + word)
                else:
                    pieces.append(format_series({0: c}) + "·" + word)
            body = " + ".join(pieces).replace("+ -", "- ")
            if k == 0:
                chunks.append(body)
            else:
                hp = "h" if k == 1 else f"h^{k}"
                chunks.append(f"{hp}·({body})" if len(pieces) > 1 else f"{hp}·{body}")
        return " + ".join(chunks)

    def to_json(self) -> list:
        return [
            {"legs": [list(m) for m in key], "series": str(s)} for key, s in self.items()
        ]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} rank={self.rank} {self.algebra.name} N={self.order}: {self.pretty()}>"


class AlgebraElement(TensorElement):
    """Element of H itself (a rank-1 tensor)."""

    __slots__ = ()

    def __init__(self, algebra: "HopfAlgebra", terms: dict | None = None):
        super().__init__(algebra, 1, terms)

    @classmethod
    def monomial(cls, algebra, mono, coeff=1) -> "AlgebraElement":
        return TensorElement.from_series(algebra, (mono,), coeff)


def make_element(algebra, rank: int, terms: dict) -> TensorElement:
    """Wrap already-clean terms without re-validating them."""
    cls = AlgebraElement if rank == 1 else TensorElement
    obj = cls.__new__(cls)
    obj.algebra = algebra
    obj.rank = rank
    obj.terms = terms
    return obj


def tensor_valuation(t: TensorElement) -> Valuation:
    return Valuation(min((k for _, k in t.terms), default=t.order), t.order)


def sum_elements(items: Iterable[TensorElement], algebra, rank: int) -> TensorElement:
    acc: dict = {}
    for t in items:
        if t.algebra is not algebra or t.rank != rank:
            raise InstanceMismatchError("cannot sum elements of different spaces")
        for key, c in t.terms.items():
            _add_into(acc, key, c)
    return make_element(algebra, rank, acc)


def scaled_valuation(t: TensorElement) -> Valuation:
    """Valuation in the lattice spanned by h^{deg m} m (h-rescaled PBW monomials).

    ``min(k - total_degree(key))`` over the terms; the h-adic valuation that
    H' carries as a module over Q[[h]].
    """
    if not t.terms:
        return Valuation(t.order, t.order)
    return Valuation(min(k - sum(map(sum, key)) for key, k in t.terms), t.order)
