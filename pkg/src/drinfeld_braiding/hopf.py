"""Hopf-algebra axioms checked monomial by monomial."""
from __future__ import annotations

from itertools import product

from .algebra import HopfAlgebra, pbw_monomials
from .elements import pretty_monomial
from .report import VerificationReport


def hopf_axioms_report(algebra: HopfAlgebra, max_degree: int = 3) -> VerificationReport:
    """Coassociativity, counit and antipode axioms on PBW monomials of degree <= max_degree,
    plus multiplicativity of Δ and ε on generator pairs."""
    N = algebra.order
    rep = VerificationReport("hopf")
    for m in pbw_monomials(max_degree):
        x = algebra.monomial(*m)
        label = pretty_monomial(m)
        d = algebra.coproduct(x)
        left = algebra.apply_at_leg(d, 0, algebra.coproduct_mono, 2)
        right = algebra.apply_at_leg(d, 1, algebra.coproduct_mono, 2)
        rep.add_residual("(Δ⊗Id)Δ = (Id⊗Δ)Δ", f"x={label}", left - right, N)
        eps_x = algebra.unit().scale(algebra.counit(x))
        for leg, name in ((0, "(ε⊗Id)Δ(x) = x"), (1, "(Id⊗ε)Δ(x) = x")):
            rep.add_residual(name, f"x={label}", algebra.apply_at_leg(d, leg, algebra.counit_mono, 0) - x, N)
        for leg, name in ((0, "m(S⊗Id)Δ(x) = ε(x)1"), (1, "m(Id⊗S)Δ(x) = ε(x)1")):
            s = algebra.apply_at_leg(d, leg, algebra.antipode_mono, 1)
            rep.add_residual(name, f"x={label}", algebra.multiply_legs(s) - eps_x, N)
    gens = [("E", algebra.E()), ("F", algebra.F()), ("H", algebra.H())]
    for (la, a), (lb, b) in product(gens, repeat=2):
        ab = a * b
        rep.add_residual(
            "Δ(xy) = Δ(x)Δ(y)", f"x={la} y={lb}", algebra.coproduct(ab) - algebra.coproduct(a) * algebra.coproduct(b), N
        )
        eps = algebra.counit(ab) - algebra.counit(a) * algebra.counit(b)
        rep.add_residual("ε(xy) = ε(x)ε(y)", f"x={la} y={lb}", eps.valuation(), N)
    rep.notes.append(f"instance={algebra.name} N={N}, PBW degree <= {max_degree}")
    return rep
