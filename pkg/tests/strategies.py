"""Hypothesis strategies for valid moduli snapshots."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from tau_engine.moduli import IrreducibleOrbit, ModuliData, make_component, make_orbit

cs_values = st.builds(
    lambda num, den, whole: Fraction(num % den, den) + whole,
    st.integers(0, 1000),
    st.integers(1, 24),
    st.integers(-3, 3),
)


@st.composite
def components(draw, cid: int, zero_hperp: bool = False):
    if zero_hperp:
        return make_component(cid, draw(cs_values), 0, 0, 0)
    h1 = 4 * draw(st.integers(0, 3))
    sf_minus = draw(st.integers(-40, 40))
    gap = 4 * draw(st.integers(0, 5))
    return make_component(cid, draw(cs_values), sf_minus + gap - h1, sf_minus, h1)


@st.composite
def moduli_data(draw, zero_hperp: bool = False, max_components: int = 4, max_irreducible: int = 8):
    ids = draw(st.lists(st.integers(1, 500), max_size=max_components, unique=True))
    comps = [draw(components(cid, zero_hperp)) for cid in ids]
    reds = []
    for c in comps:
        n = draw(st.integers(0, 3))
        for _ in range(n):
            sf_from_plus = 0 if zero_hperp else 2 * draw(st.integers(-6, 4))
            reds.append(make_orbit(c, draw(st.integers(-50, 50)), sf_from_plus))
    reds = draw(st.permutations(reds)) if reds else []
    irrs = draw(st.lists(st.integers(-50, 50).map(IrreducibleOrbit), max_size=max_irreducible))
    return ModuliData(
        name=draw(st.sampled_from(["X", "Y", "Sigma"])),
        perturbation_label=draw(st.sampled_from(["h", "h1", "-(h)"])),
        components=tuple(comps),
        reducible_orbits=tuple(reds),
        irreducible_orbits=tuple(irrs),
    )
