"""Exact truncated power series in Q[h]/h^N.

Coefficients are stored as ``gmpy2.mpq`` rationals; every series carries its
truncation order ``N`` and arithmetic refuses to mix orders.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable

from gmpy2 import mpq

DEFAULT_ORDER = 5


class OrderMismatchError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


def as_rational(value) -> mpq:
    """Coerce ints, Fractions, strings like ``"3/4"`` and mpq values to mpq."""
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, (int, Rational)) or type(value).__name__ == "mpq":
        return mpq(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Valuation(int):
    """An h-adic valuation certified only below the truncation order.

    ``Valuation(N, N)`` is the sentinel "at least N": every stored coefficient
    vanished, so nothing is known beyond the truncation.
    """

    order: int

    def __new__(cls, value: int, order: int):
        obj = super().__new__(cls, min(int(value), order))
        obj.order = order
        return obj

    @property
    def saturated(self) -> bool:
        return int(self) >= self.order

    def __str__(self) -> str:
        return f">={self.order}" if self.saturated else str(int(self))

    def __repr__(self) -> str:
        return f"Valuation({self})"

    def to_json(self):
        return str(self) if self.saturated else int(self)


class ScalarSeries:
    """Element of Q[h]/h^N with exact rational coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int = DEFAULT_ORDER):
        if order < 1:
            raise ValueError("truncation order must be positive")
        cs = [as_rational(c) for c in coeffs]
        if len(cs) > order:
            cs = cs[:order]
        cs.extend(mpq(0) for _ in range(order - len(cs)))
        self.coeffs: tuple = tuple(cs)
        self.order = order

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "ScalarSeries":
        return cls([c], order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "ScalarSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "ScalarSeries":
        return cls([1], order)

    @classmethod
    def h(cls, order: int = DEFAULT_ORDER, power: int = 1) -> "ScalarSeries":
        return cls([0] * power + [1], order)

    @classmethod
    def from_sparse(cls, items: dict, order: int) -> "ScalarSeries":
        cs = [mpq(0)] * order
        for k, c in items.items():
            if k < order:
                cs[k] = mpq(c)
        return cls(cs, order)

    def sparse(self) -> dict:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def _check(self, other: "ScalarSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def _coerce(self, other) -> "ScalarSeries":
        if isinstance(other, ScalarSeries):
            self._check(other)
            return other
        return ScalarSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return ScalarSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return ScalarSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ScalarSeries):
            c = as_rational(other)
            return ScalarSeries([a * c for a in self.coeffs], self.order)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        result = ScalarSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ScalarSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        try:
            return self == ScalarSeries.constant(other, self.order)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __bool__(self):
        return any(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def shift_down(self) -> "ScalarSeries":
        """Exact division by h; the h^0 coefficient must vanish.

        The top coefficient of the result is unknown from this series alone and
        is returned as 0, so callers needing full precision divide a series
        computed at order N+1.
        """
        if self.coeffs[0]:
            raise ArithmeticError("division by h of a series with nonzero constant term")
        return ScalarSeries(self.coeffs[1:], self.order)

    def truncate(self, order: int) -> "ScalarSeries":
        return ScalarSeries(self.coeffs[:order], order)

    def valuation(self) -> Valuation:
        return series_valuation(self)

    def __str__(self) -> str:
        return format_series(self.sparse())

    def __repr__(self) -> str:
        return f"ScalarSeries({self}, order={self.order})"


def series_mul(a: ScalarSeries, b: ScalarSeries) -> ScalarSeries:
    a._check(b)
    n = a.order
    out = [mpq(0)] * n
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(n - i):
            y = b.coeffs[j]
            if y:
                out[i + j] += x * y
    return ScalarSeries(out, n)


def series_inv(a: ScalarSeries) -> ScalarSeries:
    c0 = a.coeffs[0]
    if not c0:
        raise NotInvertibleError("constant term is zero")
    n = a.order
    inv0 = 1 / c0
    b = [inv0] + [mpq(0)] * (n - 1)
    for k in range(1, n):
        s = mpq(0)
        for i in range(1, k + 1):
            if a.coeffs[i]:
                s += a.coeffs[i] * b[k - i]
        b[k] = -s * inv0
    return ScalarSeries(b, a.order)


def series_exp(a: ScalarSeries) -> ScalarSeries:
    if a.coeffs[0]:
        raise ValueError("exp needs a series without constant term")
    result = ScalarSeries.one(a.order)
    term = ScalarSeries.one(a.order)
    for k in range(1, a.order):
        term = term * a * mpq(1, k)
        if not term:
            break
        result = result + term
    return result


def series_valuation(a: ScalarSeries) -> Valuation:
    for k, c in enumerate(a.coeffs):
        if c:
            return Valuation(k, a.order)
    return Valuation(a.order, a.order)


def format_series(sparse: dict) -> str:
    """Render ``{k: c}`` as ``c0 + c1*h + c2*h^2`` with exact rationals."""
    if not sparse:
        return "0"
    parts = []
    for k in sorted(sparse):
        c = mpq(sparse[k])
        if k == 0:
            mono = ""
        elif k == 1:
            mono = "h"
        else:
            mono = f"h^{k}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_series(text: str) -> dict:
    """Inverse of :func:`format_series`; returns the sparse ``{k: c}`` map."""
    s = text.replace(" ", "").replace("·", "*")
    if not s:
        raise ValueError("empty series")
    out: dict = {}
    # split on + / - that are not the leading sign of the expression
    chunks, start = [], 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] not in "+-*^/":
            chunks.append(s[start:i])
            start = i
    chunks.append(s[start:])
    for chunk in chunks:
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if "h" in chunk:
            coef_part, _, hpart = chunk.partition("h")
            coef_part = coef_part.rstrip("*")
            coef = as_rational(coef_part) if coef_part else mpq(1)
            k = int(hpart[1:]) if hpart.startswith("^") else 1
            if hpart and not hpart.startswith("^"):
                raise ValueError(f"bad series term {chunk!r}")
        else:
            coef, k = as_rational(chunk), 0
        out[k] = out.get(k, mpq(0)) + sign * coef
    return {k: c for k, c in out.items() if c}


def series_from_text(text: str, order: int) -> ScalarSeries:
    return ScalarSeries.from_sparse(parse_series(text), order)
