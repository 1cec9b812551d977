from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import moduli_data
from tau_engine import invariants as inv
from tau_engine.moduli import IrreducibleOrbit, ModuliData, make_component, make_orbit, validate
from tau_engine.moves import (
    Move,
    MoveError,
    apply_bifurcation,
    apply_irreducible_pair,
    apply_move,
    apply_reducible_pair,
    random_walk,
    remove_irreducible_pair,
    remove_reducible_pair,
)


def tracked(m):
    return (inv.tau(m), inv.lambda_su3(m), inv.lambda_su2(m, warn=False), inv.alpha_weighted_sum(m))


def one_orbit(sf=0):
    c = make_component(1, 0, 2, -2, 4)
    return ModuliData("X", "h", (c,), (make_orbit(c, sf, -2),), (IrreducibleOrbit(sf),))


def test_irreducible_pair_on_empty():
    m = apply_irreducible_pair(ModuliData(), 0)
    assert inv.lambda_prime(m) == 0
    assert [o.sf_theta for o in m.irreducible_orbits] == [0, 1]
    assert remove_irreducible_pair(m, 0, 1) == ModuliData()


def test_irreducible_pair_removal_needs_opposite_signs():
    m = ModuliData(irreducible_orbits=(IrreducibleOrbit(0), IrreducibleOrbit(2)))
    with pytest.raises(MoveError):
        remove_irreducible_pair(m, 0, 1)


def test_reducible_pair_keeps_every_reducible_sum():
    m = one_orbit()
    c = m.components[0]
    after = apply_reducible_pair(m, 1, make_orbit(c, 5, 2))
    assert inv.tau_correction(after) == inv.tau_correction(m)
    assert inv.lambda_su2(after, warn=False) == inv.lambda_su2(m, warn=False)
    assert inv.lambda_double_prime(after) == inv.lambda_double_prime(m)
    assert remove_reducible_pair(after, 1, 2) == m


def test_reducible_pair_rejects_inconsistent_template():
    m = one_orbit()
    bad = replace(make_orbit(m.components[0], 0, 2), sf_from_minus=3)
    with pytest.raises(MoveError):
        apply_reducible_pair(m, 1, bad)
    with pytest.raises(MoveError):
        apply_reducible_pair(m, 8, make_orbit(m.components[0], 0, 2))


def test_bifurcation_trades_correction_for_count():
    m = one_orbit(sf=0)
    after = apply_bifurcation(m, 0, +1)
    assert inv.tau_correction(after) == inv.tau_correction(m) + 1
    assert inv.lambda_prime(after) == inv.lambda_prime(m) - 1
    assert inv.tau(after) == inv.tau(m)


def test_bifurcation_round_trip():
    m = one_orbit(sf=0)
    back = apply_bifurcation(apply_bifurcation(m, 0, -1), 0, +1)
    assert inv.all_invariants(back) == inv.all_invariants(m)


def test_bifurcation_odd_orbit_flips_signs():
    m = one_orbit(sf=1)
    after = apply_bifurcation(m, 0, +1)
    assert inv.tau_correction(after) == inv.tau_correction(m) - 1
    assert inv.lambda_prime(after) == inv.lambda_prime(m) + 1


def test_bifurcation_without_partner_fails():
    m = replace(one_orbit(sf=0), irreducible_orbits=(IrreducibleOrbit(1),))
    with pytest.raises(MoveError):
        apply_bifurcation(m, 0, +1)
    with pytest.raises(MoveError):
        apply_bifurcation(m, 0, 2)
    with pytest.raises(MoveError):
        apply_bifurcation(m, 0, -1, sf=1)


def test_apply_move_dispatch():
    m = apply_move(ModuliData(), Move("irreducible_pair", {"sf": 4}))
    assert len(m.irreducible_orbits) == 2
    with pytest.raises(MoveError):
        apply_move(m, Move("teleport"))


def test_walk_zero_steps_and_determinism():
    m = one_orbit()
    assert random_walk(m, 3, 0) == m
    assert random_walk(m, 11, 200) == random_walk(m, 11, 200)


def test_walk_records_moves():
    moves = []
    random_walk(one_orbit(), 5, 25, record=moves)
    assert len(moves) == 25


@settings(max_examples=40)
@given(moduli_data(), st.integers(0, 2**63 - 1))
def test_walk_preserves_invariants(m, seed):
    after = random_walk(m, seed, 150)
    assert validate(after) == []
    assert tracked(after) == tracked(m)


@given(moduli_data(), st.integers(0, 2**32), st.integers(1, 20))
def test_each_move_keeps_data_valid(m, seed, steps):
    record = []
    end = random_walk(m, seed, steps, record=record)
    cur = m
    for move in record:
        cur = apply_move(cur, move)
        assert validate(cur) == []
        assert tracked(cur) == tracked(m)
    assert cur == end
