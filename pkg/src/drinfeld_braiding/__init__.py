"""Exact verification of the adjoint braiding Ad(R) on Drinfeld's subalgebra H' of U_h(sl2).

Arithmetic is over Q[h]/h^N with exact rationals; every check reports the
h-adic valuation of its residual.
"""
from .algebra import HopfAlgebra, get_algebra, pbw_monomials
from .braiding import BraidWord, braid_act, braided_axioms_report, theorem21_certify
from .classical import LieTensor, bialgebra_checks_report, cobracket, cybe_residual, poisson_bracket
from .combinatorics import binom_c, eprime_value, lemma33_check
from .drinfeld import MembershipCertificate, certify_hprime, certify_hprime_tensor2, lemma32_residual
from .elements import AlgebraElement, TensorElement
from .report import Check, VerificationReport
from .rmatrix import RMatrix, ad_R, build_R, classical_r, lemma31_residual, r_sigma, tensor_inverse
from .series import ScalarSeries, series_inv, series_mul
from .suites import RunConfig, run_suites
from .tensorcalc import delta_power, delta_sigma_lower, delta_sigma_upper, embed_j_sigma, tilde_coproduct

__version__ = "0.1.0"
