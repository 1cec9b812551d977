"""Elementary changes of a moduli snapshot along a generic path of perturbations.

Along a generic one-parameter family the perturbed moduli space changes by
births and deaths of orbit pairs of opposite sign, and by reducible orbits
trading an h-perp eigenvalue pair with an irreducible orbit.  Each move here
maps valid data to valid data; ``tau`` is unchanged by all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from tau_engine.moduli import (
    IrreducibleOrbit,
    ModuliData,
    ReducibleOrbit,
    make_orbit,
    require_valid,
    validate,
)

__all__ = [
    "Move",
    "MoveError",
    "apply_irreducible_pair",
    "remove_irreducible_pair",
    "apply_reducible_pair",
    "remove_reducible_pair",
    "apply_bifurcation",
    "apply_move",
    "random_move",
    "random_walk",
]

MoveKind = Literal["irreducible_pair", "reducible_pair", "bifurcation"]


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    """One elementary event.

    ``params`` by kind:

    * ``irreducible_pair``: ``{"sf": s}`` to create, ``{"remove": (j, k)}`` to annihilate.
    * ``reducible_pair``: ``{"component": id, "sf_theta": s, "sf_from_plus": p}`` to
      create, ``{"remove": (i, j)}`` to annihilate.
    * ``bifurcation``: ``{"orbit": i, "direction": +1 or -1}``.
    """

    kind: MoveKind
    params: dict = field(default_factory=dict)


def apply_irreducible_pair(m: ModuliData, sf: int) -> ModuliData:
    require_valid(m)
    extra = (IrreducibleOrbit(sf), IrreducibleOrbit(sf + 1))
    return replace(m, irreducible_orbits=m.irreducible_orbits + extra)


def remove_irreducible_pair(m: ModuliData, j: int, k: int) -> ModuliData:
    orbits = m.irreducible_orbits
    if j == k or not (0 <= j < len(orbits) and 0 <= k < len(orbits)):
        raise MoveError(f"bad irreducible pair ({j}, {k})")
    if (orbits[j].sf_theta - orbits[k].sf_theta) % 2 == 0:
        raise MoveError("an annihilating pair needs opposite signs")
    return replace(m, irreducible_orbits=tuple(o for i, o in enumerate(orbits) if i not in (j, k)))


def apply_reducible_pair(m: ModuliData, component_id: int, template: ReducibleOrbit) -> ModuliData:
    """Add ``template`` and a copy whose ``sf_theta`` is one larger."""
    require_valid(m)
    try:
        comp = m.component(component_id)
    except KeyError:
        raise MoveError(f"no component with id {component_id}") from None
    template = replace(template, component=component_id)
    probe = replace(m, components=(comp,), reducible_orbits=(template,), irreducible_orbits=())
    problems = validate(probe)
    if problems:
        raise MoveError("template violates the component's invariants: " + "; ".join(map(str, problems)))
    pair = (template, replace(template, sf_theta=template.sf_theta + 1))
    return replace(m, reducible_orbits=m.reducible_orbits + pair)


def remove_reducible_pair(m: ModuliData, i: int, j: int) -> ModuliData:
    orbits = m.reducible_orbits
    if i == j or not (0 <= i < len(orbits) and 0 <= j < len(orbits)):
        raise MoveError(f"bad reducible pair ({i}, {j})")
    a, b = orbits[i], orbits[j]
    if replace(a, sf_theta=0) != replace(b, sf_theta=0) or (a.sf_theta - b.sf_theta) % 2 == 0:
        raise MoveError("an annihilating reducible pair needs identical h-perp data and opposite signs")
    return replace(m, reducible_orbits=tuple(o for k, o in enumerate(orbits) if k not in (i, j)))


def apply_bifurcation(m: ModuliData, orbit: int, direction: int, sf: int | None = None) -> ModuliData:
    """Move one h-perp eigenvalue pair across zero at reducible orbit ``orbit``.

    Both relative flows of the orbit shift by ``2 * direction``, which moves
    the correction term by ``direction * sign``.  The irreducible count
    compensates: for ``direction = -1`` an orbit with the reducible orbit's
    parity is born (``sf`` defaults to the reducible ``sf_theta``); for
    ``direction = +1`` one with that parity dies.
    """
    require_valid(m)
    if direction not in (1, -1):
        raise MoveError("direction must be +1 or -1")
    if not 0 <= orbit < len(m.reducible_orbits):
        raise MoveError(f"no reducible orbit {orbit}")
    o = m.reducible_orbits[orbit]
    step = 2 * direction
    shifted = replace(
        o,
        sf_from_plus=o.sf_from_plus + step,
        sf_from_minus=o.sf_from_minus + step,
        sf_hperp_theta=o.sf_hperp_theta + step,
    )
    reds = list(m.reducible_orbits)
    reds[orbit] = shifted
    irrs = list(m.irreducible_orbits)
    if direction == -1:
        new_sf = o.sf_theta if sf is None else sf
        if (new_sf - o.sf_theta) % 2:
            raise MoveError("the born irreducible orbit must have the reducible orbit's parity")
        irrs.append(IrreducibleOrbit(new_sf))
    else:
        matches = [
            j
            for j, irr in enumerate(irrs)
            if (irr.sf_theta - o.sf_theta) % 2 == 0 and (sf is None or irr.sf_theta == sf)
        ]
        if not matches:
            raise MoveError("no irreducible orbit of matching parity to absorb")
        del irrs[matches[-1]]
    return replace(m, reducible_orbits=tuple(reds), irreducible_orbits=tuple(irrs))


def apply_move(m: ModuliData, move: Move) -> ModuliData:
    p = move.params
    if move.kind == "irreducible_pair":
        if "remove" in p:
            return remove_irreducible_pair(m, *p["remove"])
        return apply_irreducible_pair(m, p["sf"])
    if move.kind == "reducible_pair":
        if "remove" in p:
            return remove_reducible_pair(m, *p["remove"])
        comp = _component_or_error(m, p["component"])
        template = make_orbit(comp, p["sf_theta"], p["sf_from_plus"])
        return apply_reducible_pair(m, comp.id, template)
    if move.kind == "bifurcation":
        return apply_bifurcation(m, p["orbit"], p["direction"], p.get("sf"))
    raise MoveError(f"unknown move kind {move.kind!r}")


def _component_or_error(m, cid):
    try:
        return m.component(cid)
    except KeyError:
        raise MoveError(f"no component with id {cid}") from None


def _opposite_pairs(values: list[int]) -> list[tuple[int, int]]:
    even = [i for i, s in enumerate(values) if s % 2 == 0]
    odd = [i for i, s in enumerate(values) if s % 2]
    return [(i, j) for i in even for j in odd]


def random_move(m: ModuliData, rng: np.random.Generator) -> Move | None:
    """Draw one move; ``None`` when the drawn kind has no valid target in ``m``."""
    choice = int(rng.integers(6))
    if choice == 0:
        return Move("irreducible_pair", {"sf": int(rng.integers(-24, 25))})
    if choice == 1:
        pairs = _opposite_pairs([o.sf_theta for o in m.irreducible_orbits])
        if not pairs:
            return None
        return Move("irreducible_pair", {"remove": pairs[int(rng.integers(len(pairs)))]})
    if choice == 2:
        if not m.components:
            return None
        comp = m.components[int(rng.integers(len(m.components)))]
        return Move(
            "reducible_pair",
            {
                "component": comp.id,
                "sf_theta": int(rng.integers(-24, 25)),
                "sf_from_plus": 2 * int(rng.integers(-4, 5)),
            },
        )
    if choice == 3:
        reds = m.reducible_orbits
        pairs = [
            (i, j)
            for i, j in _opposite_pairs([o.sf_theta for o in reds])
            if replace(reds[i], sf_theta=0) == replace(reds[j], sf_theta=0)
        ]
        if not pairs:
            return None
        return Move("reducible_pair", {"remove": pairs[int(rng.integers(len(pairs)))]})
    if not m.reducible_orbits:
        return None
    orbit = int(rng.integers(len(m.reducible_orbits)))
    direction = -1 if choice == 4 else 1
    if direction == 1:
        parity = m.reducible_orbits[orbit].sf_theta % 2
        if not any(o.sf_theta % 2 == parity for o in m.irreducible_orbits):
            return None
    return Move("bifurcation", {"orbit": orbit, "direction": direction})


def random_walk(m: ModuliData, seed: int, steps: int, *, record: list[Move] | None = None) -> ModuliData:
    """Apply ``steps`` random moves drawn deterministically from ``seed``.

    Draws without a valid target are discarded and redrawn; they do not count
    as steps.  Pass a list as ``record`` to collect the applied moves.
    """
    require_valid(m)
    rng = np.random.default_rng(seed)
    done = 0
    while done < steps:
        move = random_move(m, rng)
        if move is None:
            continue
        try:
            m = apply_move(m, move)
        except MoveError:
            continue
        if record is not None:
            record.append(move)
        done += 1
    return m
