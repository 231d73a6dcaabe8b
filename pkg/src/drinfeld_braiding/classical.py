"""The semiclassical layer: sl2 as a Lie bialgebra and the Poisson structure on H'/hH'.

Lie-algebra computations are done inside U(sl2)^{⊗n} (the undeformed
instance) and projected back to g^{⊗n}; a projection that meets anything
outside g^{⊗n} raises instead of silently dropping terms.

Classes in H'/hH' use the rescaled coordinates ``f, x, e`` = classes of
``hF, hH, hE``: an element whose PBW term ``h^k F^a H^b E^c`` has
``k >= a + b + c`` everywhere lies in the rescaled lattice, and its class
keeps exactly the terms with ``k == a + b + c``.
"""
from __future__ import annotations

from itertools import product

from gmpy2 import mpq

from .algebra import get_algebra
from .elements import TensorElement, _add_into, make_element, scaled_valuation
from .report import VerificationReport
from .series import as_rational, format_rational

BASIS = ("E", "H", "F")
_MONO = {"E": (0, 0, 1), "H": (0, 1, 0), "F": (1, 0, 0)}
_LETTER = {v: k for k, v in _MONO.items()}


class ProjectionError(ValueError):
    """An enveloping-algebra tensor had a component outside g^{⊗n}."""


class NotInHPrimeLatticeError(ValueError):
    pass


def _classical_algebra():
    return get_algebra("trivial", 1)


class LieTensor:
    """Element of g^{⊗rank} for g = sl2 on the ordered basis (E, H, F)."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != rank or any(x not in BASIS for x in key):
                raise ValueError(f"bad LieTensor key {key!r} for rank {rank}")
            c = as_rational(c)
            if c:
                clean[key] = clean.get(key, mpq(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, letter: str) -> "LieTensor":
        return cls(1, {(letter,): 1})

    @classmethod
    def zero(cls, rank: int) -> "LieTensor":
        return cls(rank)

    def __add__(self, other: "LieTensor") -> "LieTensor":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c)
        return LieTensor(self.rank, terms)

    def __neg__(self):
        return LieTensor(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_rational(c)
        return LieTensor(self.rank, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LieTensor):
            return self.rank == other.rank and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def tensor(self, other: "LieTensor") -> "LieTensor":
        return LieTensor(
            self.rank + other.rank,
            {a + b: ca * cb for a, ca in self.terms.items() for b, cb in other.terms.items()},
        )

    def permute(self, perm) -> "LieTensor":
        return LieTensor(self.rank, {tuple(k[p] for p in perm): c for k, c in self.terms.items()})

    def flip(self) -> "LieTensor":
        return self.permute((1, 0))

    def to_enveloping(self) -> TensorElement:
        alg = _classical_algebra()
        return make_element(
            alg, self.rank, {(tuple(_MONO[x] for x in k), 0): c for k, c in self.terms.items()}
        )

    @classmethod
    def from_enveloping(cls, t: TensorElement) -> "LieTensor":
        terms = {}
        for (key, k), c in t.terms.items():
            if k != 0:
                raise ProjectionError("tensor still depends on h")
            try:
                terms[tuple(_LETTER[m] for m in key)] = c
            except KeyError:
                raise ProjectionError(f"component {key} is not in g^⊗{t.rank}") from None
        return cls(t.rank, terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        order = {x: i for i, x in enumerate(BASIS)}
        parts = []
        for key in sorted(self.terms, key=lambda k: [order[x] for x in k]):
            parts.append("⊗".join(key) + " : " + format_rational(self.terms[key]))
        return "\n".join(parts)

    def to_json(self) -> list:
        return [{"legs": list(k), "coeff": format_rational(c)} for k, c in sorted(self.terms.items())]

    def __repr__(self):
        return f"LieTensor({self.render()!r})"


def _embed(t: LieTensor, positions, rank: int) -> TensorElement:
    return t.to_enveloping().place(positions, rank)


def cybe_residual(r: LieTensor) -> LieTensor:
    """[r12, r13] + [r12, r23] + [r13, r23] in g^{⊗3}."""
    if r.rank != 2:
        raise ValueError("CYBE needs a rank-2 tensor")
    r12, r13, r23 = (_embed(r, p, 3) for p in ((0, 1), (0, 2), (1, 2)))
    total = r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23)
    return LieTensor.from_enveloping(total)


def _adjoint_lift(x: LieTensor, rank: int) -> TensorElement:
    """x acting diagonally on g^{⊗rank}: Σ_i 1⊗..⊗x⊗..⊗1."""
    if x.rank != 1:
        raise ValueError("expected an element of g")
    base = x.to_enveloping()
    total = _classical_algebra().zero(rank)
    for i in range(rank):
        total = total + base.place((i,), rank)
    return total


def adjoint_action(x: LieTensor, t: LieTensor) -> LieTensor:
    return LieTensor.from_enveloping(_adjoint_lift(x, t.rank).commutator(t.to_enveloping()))


def bracket(x: LieTensor, y: LieTensor) -> LieTensor:
    return adjoint_action(x, y)


def cobracket(x: LieTensor, r: LieTensor) -> LieTensor:
    """δ(x) = [x⊗1 + 1⊗x, r]."""
    return adjoint_action(x, r)


def _apply_cobracket_first_leg(t: LieTensor, r: LieTensor) -> LieTensor:
    total = LieTensor.zero(t.rank + 1)
    for key, c in t.terms.items():
        d = cobracket(LieTensor.basis(key[0]), r)
        rest = LieTensor(t.rank - 1, {key[1:]: c}) if t.rank > 1 else None
        total = total + (d.tensor(rest) if rest is not None else d * c)
    return total


def co_jacobi_residual(x: LieTensor, r: LieTensor) -> LieTensor:
    """(1 + τ + τ²)(δ⊗1)δ(x) with τ the cyclic shift of three legs."""
    t = _apply_cobracket_first_leg(cobracket(x, r), r)
    return t + t.permute((1, 2, 0)) + t.permute((2, 0, 1))


def bialgebra_checks_report(r: LieTensor) -> VerificationReport:
    rep = VerificationReport("lie-bialgebra")
    basis = [LieTensor.basis(b) for b in BASIS]
    for b, x in zip(BASIS, basis):
        d = cobracket(x, r)
        rep.add("antisymmetry δ(x) + σδ(x) = 0", f"x={b}", not (d + d.flip()), value=(d + d.flip()).render())
    for b, x in zip(BASIS, basis):
        res = co_jacobi_residual(x, r)
        rep.add("co-Jacobi", f"x={b}", not res, value=res.render())
    for (bx, x), (by, y) in product(zip(BASIS, basis), repeat=2):
        lhs = cobracket(bracket(x, y), r)
        rhs = adjoint_action(x, cobracket(y, r)) - adjoint_action(y, cobracket(x, r))
        rep.add("cocycle δ([x,y]) = x·δ(y) - y·δ(x)", f"x={bx} y={by}", lhs == rhs)
    sym = r + r.flip()
    for b, x in zip(BASIS, basis):
        res = adjoint_action(x, sym)
        rep.add("ad-invariance of r + σ(r)", f"x={b}", not res, value=res.render())
    res = cybe_residual(r)
    rep.add("CYBE", "r", not res, value=res.render())
    return rep


def copoisson_residuals(algebra, r: LieTensor) -> dict:
    """δ(x) against ((Δ - Δ^op)(x)/h)|_{h=0} for each generator lift in ``algebra``."""
    out = {}
    gens = {"E": algebra.E(), "H": algebra.H(), "F": algebra.F()}
    for name, g in gens.items():
        d = algebra.coproduct(g)
        quantum = LieTensor.from_enveloping((d - d.flip()).divide_by_h().specialize_h0())
        out[name] = quantum - cobracket(LieTensor.basis(name), r)
    return out


# -- Poisson structure on H'/hH' -------------------------------------------

class ClassicalFunction:
    """Polynomial in the commuting coordinates f, x, e (classes of hF, hH, hE).

    ``precision`` is the largest total degree known exactly; higher-degree
    terms are dropped.
    """

    __slots__ = ("terms", "precision")

    def __init__(self, terms: dict | None = None, precision: int = 10**9):
        self.precision = precision
        self.terms = {
            k: as_rational(c) for k, c in (terms or {}).items() if c and sum(k) <= precision
        }

    def truncate(self, precision: int) -> "ClassicalFunction":
        return ClassicalFunction(self.terms, min(precision, self.precision))

    def __add__(self, other: "ClassicalFunction") -> "ClassicalFunction":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c)
        return ClassicalFunction(terms, min(self.precision, other.precision))

    def __neg__(self):
        return ClassicalFunction({k: -c for k, c in self.terms.items()}, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ClassicalFunction):
            c = as_rational(other)
            return ClassicalFunction({k: v * c for k, v in self.terms.items()}, self.precision)
        # a term of degree d times something known up to degree p is known up to d + p
        low_a = min((sum(k) for k in self.terms), default=10**9)
        low_b = min((sum(k) for k in other.terms), default=10**9)
        prec = min(self.precision + low_b, other.precision + low_a)
        terms: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                if sum(key) <= prec:
                    _add_into(terms, key, ca * cb)
        return ClassicalFunction(terms, prec)

    __rmul__ = __mul__

    def agrees_with(self, other: "ClassicalFunction", precision: int | None = None) -> bool:
        p = min(self.precision, other.precision)
        if precision is not None:
            p = min(p, precision)
        return self.truncate(p).terms == other.truncate(p).terms

    def __eq__(self, other):
        if isinstance(other, ClassicalFunction):
            return self.agrees_with(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(k), k)):
            word = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(("f", "x", "e"), key) if p
            ) or "1"
            parts.append(f"{format_rational(self.terms[key])}*{word}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ClassicalFunction({self.render()}, precision={self.precision})"


def semiclassical_class(a: TensorElement, known_order: int | None = None) -> ClassicalFunction:
    """Class of ``a`` in H'/hH' in the coordinates (f, x, e)."""
    if a.rank != 1:
        raise ValueError("classes are defined here for elements of H")
    if scaled_valuation(a) < 0:
        raise NotInHPrimeLatticeError("element has a term h^k m with k < deg m")
    n = a.order if known_order is None else known_order
    terms = {}
    for ((m,), k), c in a.terms.items():
        if k == sum(m):
            terms[m] = c
    return ClassicalFunction(terms, n - 1)


def bracket_lift(a: TensorElement, b: TensorElement) -> TensorElement:
    """(ab - ba)/h, a lift in H' of the bracket; exact modulo h^(N-1)."""
    comm = a * b - b * a
    if scaled_valuation(comm) < 1:
        raise NotInHPrimeLatticeError("inputs do not commute modulo h H'")
    return comm.divide_by_h()


def poisson_bracket(a: TensorElement, b: TensorElement, known_order: int | None = None) -> ClassicalFunction:
    """{ā, b̄} = class of (ab - ba)/h in H'/hH'.

    ``known_order`` is the h-adic precision of the inputs (defaults to N);
    the result is exact in total degree <= known_order - 2.
    """
    n = a.order if known_order is None else known_order
    return semiclassical_class(bracket_lift(a, b), n - 1)
