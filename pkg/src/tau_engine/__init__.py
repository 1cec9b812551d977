"""Integer valued SU(3) Casson invariant of homology 3-spheres from moduli data."""

from tau_engine.composition import (
    connected_sum_reducible,
    correction_additivity_check,
    orientation_reverse,
    tau_connected_sum,
)
from tau_engine.invariants import (
    all_invariants,
    alpha_pair,
    lambda_double_prime,
    lambda_prime,
    lambda_su2,
    lambda_su3,
    rho,
    tau,
    tau_correction,
)
from tau_engine.moduli import (
    IrreducibleOrbit,
    ModuliData,
    ReducibleComponent,
    ReducibleOrbit,
    deck_shift,
    validate,
)

__all__ = [
    "ModuliData",
    "ReducibleComponent",
    "ReducibleOrbit",
    "IrreducibleOrbit",
    "validate",
    "deck_shift",
    "rho",
    "alpha_pair",
    "lambda_prime",
    "tau_correction",
    "tau",
    "lambda_double_prime",
    "lambda_su3",
    "lambda_su2",
    "all_invariants",
    "connected_sum_reducible",
    "correction_additivity_check",
    "tau_connected_sum",
    "orientation_reverse",
]

__version__ = "0.1.0"
