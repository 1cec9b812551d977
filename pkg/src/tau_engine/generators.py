"""Random valid moduli snapshots for fuzzing and property tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from tau_engine.moduli import IrreducibleOrbit, ModuliData, make_component, make_orbit

__all__ = ["random_component", "random_moduli"]


def random_component(rng: np.random.Generator, cid: int, *, zero_hperp: bool = False):
    den = int(rng.integers(1, 13))
    cs = Fraction(int(rng.integers(0, den)), den) + int(rng.integers(-2, 3))
    if zero_hperp:
        return make_component(cid, cs, 0, 0, 0)
    h1 = 4 * int(rng.integers(0, 3))
    sf_minus = int(rng.integers(-20, 21))
    # alpha_plus - alpha_minus = sf_plus - sf_minus + h1 must be a nonnegative multiple of 4
    gap = 4 * int(rng.integers(0, 4))
    return make_component(cid, cs, sf_minus + gap - h1, sf_minus, h1)


def random_moduli(
    rng: np.random.Generator,
    *,
    max_components: int = 4,
    max_orbits_per_component: int = 3,
    max_irreducible: int = 6,
    zero_hperp: bool = False,
    name: str = "random",
) -> ModuliData:
    """A valid snapshot with random sizes and data.

    With ``zero_hperp`` every component has vanishing h-perp data and every
    reducible orbit zero relative flows, the situation where the correction
    term must vanish.
    """
    n_comp = int(rng.integers(0, max_components + 1))
    ids = sorted(int(i) for i in rng.choice(np.arange(1, 100), size=n_comp, replace=False))
    comps = [random_component(rng, cid, zero_hperp=zero_hperp) for cid in ids]
    reds = []
    for c in comps:
        for _ in range(int(rng.integers(0, max_orbits_per_component + 1))):
            sf_from_plus = 0 if zero_hperp else 2 * int(rng.integers(-4, 3))
            reds.append(make_orbit(c, int(rng.integers(-30, 31)), sf_from_plus))
    order = rng.permutation(len(reds)) if reds else []
    irrs = [IrreducibleOrbit(int(rng.integers(-30, 31))) for _ in range(int(rng.integers(0, max_irreducible + 1)))]
    return ModuliData(
        name=name,
        perturbation_label=f"h{int(rng.integers(1 << 30))}",
        components=tuple(comps),
        reducible_orbits=tuple(reds[i] for i in order),
        irreducible_orbits=tuple(irrs),
    )
