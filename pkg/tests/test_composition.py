from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import moduli_data
from tau_engine import invariants as inv
from tau_engine.composition import (
    TRIVIAL_COMPONENT,
    NotRegularError,
    connected_sum_reducible,
    correction_additivity_check,
    orientation_reverse,
    tau_connected_sum,
)
from tau_engine.moduli import IrreducibleOrbit, ModuliData, make_component, make_orbit, validate

F = Fraction


def single(cid=1, cs=F(1, 3), plus=2, minus=-2, h1=4, sf=0, from_plus=-2):
    c = make_component(cid, cs, plus, minus, h1)
    return ModuliData("X", "h", (c,), (make_orbit(c, sf, from_plus),), ())


def test_trivial_component_has_zero_alpha():
    assert TRIVIAL_COMPONENT.alpha_plus == TRIVIAL_COMPONENT.alpha_minus == 0
    assert validate(ModuliData(components=(TRIVIAL_COMPONENT,))) == []


def test_sum_with_empty_copies_orbits():
    m = single()
    s = connected_sum_reducible(m, ModuliData())
    assert len(s.components) == 1
    assert [replace(o, component=0) for o in s.reducible_orbits] == [
        replace(o, component=0) for o in m.reducible_orbits
    ]
    assert inv.tau_correction(s) == inv.tau_correction(m)
    assert inv.lambda_double_prime(s) == inv.lambda_double_prime(m)


def test_alpha_adds():
    a = make_component(1, 0, 0, 0, 0)  # alpha_plus = 2
    b = make_component(1, F(1, 4), 2, 2, 0)  # alpha_plus = 3
    assert (a.alpha_plus, b.alpha_plus) == (2, 3)
    s = connected_sum_reducible(ModuliData(components=(a,)), ModuliData(components=(b,)))
    assert s.component(3).alpha_plus == 5
    assert s.component(3).cs_mod1 == F(1, 4)


def test_one_orbit_each_side():
    s = connected_sum_reducible(single(), single(sf=3))
    # pairs (0,1), (1,0), (1,1)
    assert len(s.components) == 3
    assert sorted(o.component for o in s.reducible_orbits) == [1, 2]
    assert not [o for o in s.reducible_orbits if o.component == 3]
    assert s.irreducible_orbits == ()
    assert validate(s) == []


def test_empty_sum():
    assert correction_additivity_check(ModuliData(), ModuliData())


@given(moduli_data(max_components=3), moduli_data(max_components=3))
def test_sum_is_valid_and_correction_additive(m1, m2):
    s = connected_sum_reducible(m1, m2)
    assert validate(s) == []
    assert correction_additivity_check(m1, m2)
    assert inv.lambda_su2(s, warn=False) == inv.lambda_su2(m1, warn=False) + inv.lambda_su2(m2, warn=False)


def test_tau_connected_sum_examples():
    assert tau_connected_sum(2, 4, -2, -2) == 22
    assert tau_connected_sum(7, 0, 3, 0) == 7


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-50, 50), st.integers(-50, 50))
def test_mod16_additive_for_even_casson(t1, t2, l1, l2):
    l1, l2 = 2 * l1, 2 * l2
    assert tau_connected_sum(t1, t2, l1, l2) % 16 == (t1 + t2) % 16


# orientation reversal


def test_reverse_examples():
    m = single(sf=0)
    r = orientation_reverse(m)
    assert r.reducible_orbits[0].sf_theta == -7
    irr = orientation_reverse(ModuliData(irreducible_orbits=(IrreducibleOrbit(3),)))
    assert irr.irreducible_orbits[0].sf_theta == -11


def test_reverse_alpha_example():
    # alpha_plus = 2, alpha_minus = -5
    c = make_component(1, 0, 0, -3, 4)
    assert (c.alpha_plus, c.alpha_minus) == (2, -5)
    r = orientation_reverse(ModuliData(components=(c,))).components[0]
    assert (r.alpha_plus, r.alpha_minus) == (5, -2)


def test_reverse_needs_regular_data():
    with pytest.raises(NotRegularError):
        orientation_reverse(single(), regular=False)


def test_reverse_negates_cs_and_label():
    r = orientation_reverse(single(cs=F(1, 3)))
    assert r.components[0].cs_mod1 == F(2, 3)
    assert r.components[0].cs_plus == F(-1, 3)
    assert r.perturbation_label == "-(h)"
    assert r.name == "-X"


@given(moduli_data())
def test_reverse_invariants(m):
    r = orientation_reverse(m)
    assert validate(r) == []
    assert inv.tau(r) == inv.tau(m)
    assert inv.lambda_su3(r) == inv.lambda_su3(m)
    assert inv.lambda_su2(r, warn=False) == -inv.lambda_su2(m, warn=False)
    for a, b in zip(m.irreducible_orbits, r.irreducible_orbits):
        assert (a.sf_theta - b.sf_theta) % 2 == 0


@given(moduli_data())
def test_double_reverse_is_identity(m):
    rr = orientation_reverse(orientation_reverse(m))
    assert rr == m
    assert inv.all_invariants(rr) == inv.all_invariants(m)
