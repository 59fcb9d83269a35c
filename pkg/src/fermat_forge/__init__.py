"""Construct and verify exponential-polynomial solutions of Fermat-type
binomial and trinomial difference and differential-difference equations in C^n."""

from .algebra import MPoly, make_periodic, periodic_direction
from .equations import (
    PDDE,
    BinomialDiff,
    LinearReduced,
    Trinomial,
    diagnose,
    factor_check,
    omega_roots,
    residual,
    verify,
)
from .expfun import ExpPoly, SamplingConfig, ep_eval, ep_is_zero
from .growth import estimate_order, structural_order
from .solutions import (
    SolutionBundle,
    construct_binomial,
    construct_binomial_single,
    construct_classical,
    construct_linear_reduced,
    construct_pdde,
    construct_pdde_single,
    construct_trinomial,
    construct_trinomial_two,
    construct_trinomial_w0,
    solve_linear_exponent,
    solve_xi,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialDiff",
    "ExpPoly",
    "LinearReduced",
    "MPoly",
    "PDDE",
    "SamplingConfig",
    "SolutionBundle",
    "Trinomial",
    "construct_binomial",
    "construct_binomial_single",
    "construct_classical",
    "construct_linear_reduced",
    "construct_pdde",
    "construct_pdde_single",
    "construct_trinomial",
    "construct_trinomial_two",
    "construct_trinomial_w0",
    "diagnose",
    "ep_eval",
    "ep_is_zero",
    "estimate_order",
    "factor_check",
    "make_periodic",
    "omega_roots",
    "periodic_direction",
    "residual",
    "solve_linear_exponent",
    "solve_xi",
    "structural_order",
    "verify",
]
