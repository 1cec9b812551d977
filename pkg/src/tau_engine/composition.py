"""Connected sum and orientation reversal on moduli snapshots."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from tau_engine import invariants as inv
from tau_engine.moduli import (
    IrreducibleOrbit,
    ModuliData,
    ReducibleComponent,
    ReducibleOrbit,
    require_valid,
)

__all__ = [
    "connected_sum_reducible",
    "correction_additivity_check",
    "tau_connected_sum",
    "orientation_reverse",
    "NotRegularError",
    "TRIVIAL_COMPONENT",
]

# C_0 = {[theta]}: alpha_plus = alpha_minus = 0.  The h-perp lifts below are
# the ones making that consistent with alpha = sf - 4 cs + 2.
TRIVIAL_COMPONENT = ReducibleComponent(
    id=0,
    cs_mod1=Fraction(0),
    alpha_plus=Fraction(0),
    alpha_minus=Fraction(0),
    h1_minus=0,
    sf_hperp_theta_plus=-2,
    sf_hperp_theta_minus=-2,
    cs_plus=Fraction(0),
    cs_minus=Fraction(0),
)


class NotRegularError(ValueError):
    pass


def _mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _sum_components(cid: int, a: ReducibleComponent, b: ReducibleComponent) -> ReducibleComponent:
    # rho and h1 are additive, so sf + 2 is additive (not sf itself)
    return ReducibleComponent(
        id=cid,
        cs_mod1=_mod1(a.cs_mod1 + b.cs_mod1),
        alpha_plus=a.alpha_plus + b.alpha_plus,
        alpha_minus=a.alpha_minus + b.alpha_minus,
        h1_minus=a.h1_minus + b.h1_minus,
        sf_hperp_theta_plus=a.sf_hperp_theta_plus + b.sf_hperp_theta_plus + 2,
        sf_hperp_theta_minus=a.sf_hperp_theta_minus + b.sf_hperp_theta_minus + 2,
        cs_plus=a.cs_plus + b.cs_plus,
        cs_minus=a.cs_minus + b.cs_minus,
    )


def connected_sum_reducible(m1: ModuliData, m2: ModuliData) -> ModuliData:
    """Reducible stratum of X1 # X2 built from the strata of X1 and X2.

    Components are indexed by pairs (i, j) with 0 standing for the trivial
    component; pairs are numbered 1, 2, ... in lexicographic order, skipping
    (0, 0).  Point components ``theta # A2`` and ``A1 # theta`` carry the
    orbit data of ``A2`` and ``A1``.  Components with i, j > 0 are copies of
    SO(3) whose orbits cancel in pairs, so they get no orbits.  Irreducible
    orbits of the sum are not produced.
    """
    require_valid(m1)
    require_valid(m2)
    left = [TRIVIAL_COMPONENT] + list(m1.components)
    right = [TRIVIAL_COMPONENT] + list(m2.components)
    pair_to_id: dict[tuple[int, int], int] = {}
    comps = []
    for a in left:
        for b in right:
            if a.id == 0 and b.id == 0:
                continue
            cid = len(comps) + 1
            pair_to_id[(a.id, b.id)] = cid
            comps.append(_sum_components(cid, a, b))
    orbits = [replace(o, component=pair_to_id[(o.component, 0)]) for o in m1.reducible_orbits]
    orbits += [replace(o, component=pair_to_id[(0, o.component)]) for o in m2.reducible_orbits]
    return ModuliData(
        name=f"{m1.name}#{m2.name}",
        perturbation_label=f"{m1.perturbation_label}+{m2.perturbation_label}",
        components=tuple(comps),
        reducible_orbits=tuple(orbits),
        irreducible_orbits=(),
    )


def _defect(m: ModuliData) -> Fraction:
    return inv.lambda_su3(m) - inv.tau(m)


def correction_additivity_check(m1: ModuliData, m2: ModuliData) -> bool:
    """Whether ``lambda_su3 - tau`` of the sum equals the sum over the parts."""
    summed = connected_sum_reducible(m1, m2)
    return _defect(summed) == _defect(m1) + _defect(m2)


def tau_connected_sum(tau1: int, tau2: int, l1: int, l2: int) -> int:
    """tau of X1 # X2 from tau and the SU(2) Casson invariants of the summands."""
    return tau1 + tau2 + 4 * l1 * l2


def _negate_label(label: str) -> str:
    if label.startswith("-(") and label.endswith(")"):
        return label[2:-1]
    return f"-({label})"


def orientation_reverse(m: ModuliData, *, regular: bool = True) -> ModuliData:
    """Snapshot for the reversed orientation, paired with the negated perturbation.

    Reversal reflects the spectrum through zero, so a spectral flow ending at
    a regular orbit becomes ``-sf + dim ker(end) - dim ker(theta)``: the
    kernel at theta is su(3) (8), at a reducible orbit its u(1) stabiliser
    (1), and on h-perp 4 at theta and 0 at a regular orbit.  The extremal
    points trade roles, so alpha_plus and alpha_minus swap and change sign.

    Only regular snapshots (zero perturbed kernels) are accepted.
    """
    if not regular:
        raise NotRegularError("orientation reversal needs a regular snapshot")
    require_valid(m)
    comps = {}
    for c in m.components:
        h1 = c.h1_minus
        comps[c.id] = ReducibleComponent(
            id=c.id,
            cs_mod1=_mod1(-c.cs_mod1),
            alpha_plus=-c.alpha_minus,
            alpha_minus=-c.alpha_plus,
            h1_minus=h1,
            sf_hperp_theta_plus=-c.sf_hperp_theta_minus - 4 + h1,
            sf_hperp_theta_minus=-c.sf_hperp_theta_plus - 4 + h1,
            cs_plus=-c.cs_minus,
            cs_minus=-c.cs_plus,
        )
    orbits = []
    for o in m.reducible_orbits:
        c = comps[o.component]
        sf_hperp = -o.sf_hperp_theta - 4
        orbits.append(
            ReducibleOrbit(
                component=o.component,
                sf_theta=-o.sf_theta - 7,
                sf_from_plus=sf_hperp - c.sf_hperp_theta_plus,
                sf_from_minus=sf_hperp - c.sf_hperp_theta_minus,
                sf_hperp_theta=sf_hperp,
                cs_hat=-o.cs_hat,
            )
        )
    return ModuliData(
        name=f"-{m.name}" if not m.name.startswith("-") else m.name[1:],
        perturbation_label=_negate_label(m.perturbation_label),
        components=tuple(comps[c.id] for c in m.components),
        reducible_orbits=tuple(orbits),
        irreducible_orbits=tuple(IrreducibleOrbit(-o.sf_theta - 8) for o in m.irreducible_orbits),
    )
