"""Invariants of a moduli snapshot, evaluated in exact arithmetic.

The integer invariant is ``tau = lambda_prime + tau_correction``: a signed
count of irreducible orbits plus a correction over the reducible orbits that
only needs relative h-perp spectral flows.  ``lambda_su3`` uses the older
Chern-Simons corrected term instead and is rational in general.  The trivial
orbit never enters any sum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from tau_engine.moduli import ModuliData, require_valid

__all__ = [
    "FlatReducibleRecord",
    "rho",
    "alpha_pair",
    "lambda_prime",
    "tau_correction",
    "tau",
    "lambda_double_prime",
    "lambda_su3",
    "lambda_su2",
    "alpha_weighted_sum",
    "all_invariants",
    "OddCassonWarning",
]


class OddCassonWarning(UserWarning):
    """The signed reducible count is odd; genuine homology-sphere data gives an even value."""


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class FlatReducibleRecord:
    """rho invariant and h-perp cohomology dimension of one flat reducible point."""

    rho: Fraction
    h1: int


def rho(sf_c2: int, cs: Fraction | int, h1: int) -> Fraction:
    """Rho invariant of a flat SU(2) x {1} connection with respect to C^2.

    >>> rho(2, Fraction(1, 2), 0)
    Fraction(2, 1)
    """
    if h1 < 0:
        raise ValueError("h1 must be nonnegative")
    return sf_c2 - 4 * Fraction(cs) + 2 - Fraction(h1, 2)


def alpha_pair(records: Sequence[FlatReducibleRecord]) -> tuple[Fraction, Fraction]:
    """Extremes of ``rho + h1/2`` and ``rho - h1/2`` over samples of one component."""
    if not records:
        raise ValueError("alpha_pair needs at least one flat record")
    plus = max(Fraction(r.rho) + Fraction(r.h1, 2) for r in records)
    minus = min(Fraction(r.rho) - Fraction(r.h1, 2) for r in records)
    return plus, minus


def lambda_prime(m: ModuliData) -> int:
    require_valid(m)
    return sum(_sign(o.sf_theta) for o in m.irreducible_orbits)


def tau_correction(m: ModuliData) -> int:
    require_valid(m)
    comps = m.component_map()
    total = sum(
        _sign(o.sf_theta) * (o.sf_from_plus + o.sf_from_minus + comps[o.component].h1_minus)
        for o in m.reducible_orbits
    )
    q, r = divmod(total, 4)
    # every summand is divisible by 4 once validation passed
    assert r == 0, total
    return q


def tau(m: ModuliData) -> int:
    return lambda_prime(m) + tau_correction(m)


def lambda_double_prime(m: ModuliData) -> Fraction:
    require_valid(m)
    total = sum(
        (_sign(o.sf_theta) * (o.sf_hperp_theta - 4 * o.cs_hat + 2) for o in m.reducible_orbits),
        Fraction(0),
    )
    return total / 2


def lambda_su3(m: ModuliData) -> Fraction:
    return lambda_prime(m) + lambda_double_prime(m)


def lambda_su2(m: ModuliData, *, warn: bool = True) -> int:
    require_valid(m)
    value = sum(_sign(o.sf_theta) for o in m.reducible_orbits)
    if warn and value % 2:
        warnings.warn(
            f"{m.name or 'moduli data'}: signed reducible count {value} is odd",
            OddCassonWarning,
            stacklevel=2,
        )
    return value


def alpha_weighted_sum(m: ModuliData) -> Fraction:
    """Sum over reducible orbits of sign * (alpha_plus + alpha_minus) of the orbit's component.

    A quarter of this equals ``lambda_su3 - tau``.
    """
    require_valid(m)
    comps = m.component_map()
    return sum(
        (
            _sign(o.sf_theta) * (comps[o.component].alpha_plus + comps[o.component].alpha_minus)
            for o in m.reducible_orbits
        ),
        Fraction(0),
    )


def all_invariants(m: ModuliData) -> dict[str, Fraction | int]:
    """The six reported invariants, keyed by their short names."""
    require_valid(m)
    lp = lambda_prime(m)
    tc = tau_correction(m)
    ldp = lambda_double_prime(m)
    return {
        "lambda_prime": lp,
        "tau_correction": tc,
        "tau": lp + tc,
        "lambda_double_prime": ldp,
        "lambda_su3": lp + ldp,
        "lambda_su2": lambda_su2(m, warn=False),
    }
