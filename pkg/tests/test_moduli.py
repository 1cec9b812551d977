import json
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crafted import CRAFTED
from strategies import moduli_data
from tau_engine.moduli import (
    EMPTY,
    InvalidModuliError,
    IrreducibleOrbit,
    MalformedModuliFile,
    ModuliData,
    bound_warnings,
    deck_shift,
    dumps,
    format_rational,
    loads,
    make_component,
    make_orbit,
    orbit_keys,
    require_valid,
    validate,
)


def snapshot():
    c = make_component(1, Fraction(1, 2), 0, 0, 4)
    o = make_orbit(c, 0, 2)
    return ModuliData("X", "h", (c,), (o,), (IrreducibleOrbit(5),))


def rules(m):
    return {v.rule for v in validate(m)}


def test_empty_is_valid():
    assert validate(ModuliData()) == []
    assert validate(EMPTY) == []


def test_odd_relative_flow_is_reported_as_evenness():
    m = snapshot()
    bad = replace(m.reducible_orbits[0], sf_from_plus=-1)
    assert "evenness" in rules(replace(m, reducible_orbits=(bad,)))


def test_h1_not_divisible_by_four():
    c = make_component(1, 0, 0, 0, 2)
    assert "h1 mod 4" in rules(ModuliData(components=(c,)))


def test_snapshot_is_valid():
    assert validate(snapshot()) == []


def test_violation_names_the_record():
    m = snapshot()
    bad = replace(m.reducible_orbits[0], component=9)
    (v,) = validate(replace(m, reducible_orbits=(bad,)))
    assert v.rule == "unknown component" and v.key == "reducible:0"


def test_require_valid_raises_with_violations():
    c = make_component(1, 0, 0, 0, 2)
    with pytest.raises(InvalidModuliError) as err:
        require_valid(ModuliData(components=(c,)))
    assert err.value.violations[0].rule == "h1 mod 4"


# deck transformations


def test_deck_shift_irreducible():
    m = deck_shift(snapshot(), "irreducible:0", 1)
    assert m.irreducible_orbits[0].sf_theta == 17


def test_deck_shift_zero_is_identity():
    m = snapshot()
    assert deck_shift(m, "reducible:0", 0) == m


def test_deck_shift_reducible_example():
    c = make_component(1, Fraction(1, 2), 2, 2, 0)
    m = ModuliData(components=(c,), reducible_orbits=(make_orbit(c, 0, 0),))
    o = m.reducible_orbits[0]
    assert (o.sf_hperp_theta, o.cs_hat) == (2, Fraction(1, 2))
    shifted = deck_shift(m, "reducible:0", 1).reducible_orbits[0]
    assert (shifted.sf_hperp_theta, shifted.cs_hat) == (6, Fraction(3, 2))
    assert shifted.sf_hperp_theta - 4 * shifted.cs_hat == o.sf_hperp_theta - 4 * o.cs_hat == 0


@pytest.mark.parametrize("key", ["irreducible:1", "reducible:3", "trivial:0", "reducible", "reducible:x"])
def test_deck_shift_unknown_key(key):
    with pytest.raises(KeyError):
        deck_shift(snapshot(), key, 1)


@given(moduli_data(), st.integers(-5, 5), st.data())
def test_deck_shift_keeps_signs_validity_and_hperp_combination(m, d, data):
    keys = orbit_keys(m)
    if not keys:
        return
    key = data.draw(st.sampled_from(keys))
    shifted = deck_shift(m, key, d)
    assert validate(shifted) == []
    for a, b in zip(m.irreducible_orbits, shifted.irreducible_orbits):
        assert (a.sf_theta - b.sf_theta) % 2 == 0
    for a, b in zip(m.reducible_orbits, shifted.reducible_orbits):
        assert (a.sf_theta - b.sf_theta) % 2 == 0
        assert a.sf_hperp_theta - 4 * a.cs_hat == b.sf_hperp_theta - 4 * b.cs_hat


# file format


@given(moduli_data())
def test_round_trip_is_byte_identical(m):
    text = dumps(m)
    assert loads(text) == m
    assert dumps(loads(text)) == text


def test_rationals_are_reduced_on_output():
    doc = json.loads(dumps(snapshot()))
    comp = doc["components"][0]
    assert comp["cs_plus"] == "1/2"
    assert comp["alpha_plus"] == "0"
    text = dumps(snapshot()).replace('"cs_hat": "1/2"', '"cs_hat": "2/4"')
    assert dumps(loads(text)) == dumps(snapshot())


@pytest.mark.parametrize(
    "q, text", [(Fraction(3, 2), "3/2"), (Fraction(-7, 4), "-7/4"), (Fraction(4), "4"), (0, "0")]
)
def test_format_rational(q, text):
    assert format_rational(q) == text


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d["components"][0].update(cs_plus=0.5), "components[0].cs_plus"),
        (lambda d: d["components"][0].update(cs_plus="1/0"), "zero denominator"),
        (lambda d: d["components"][0].update(cs_plus="a/b"), "bad rational"),
        (lambda d: d["components"][0].pop("h1_minus"), "missing field"),
        (lambda d: d["components"][0].update(colour="red"), "unknown field"),
        (lambda d: d["reducible_orbits"][0].update(sf_theta="1"), "reducible_orbits[0].sf_theta"),
        (lambda d: d["irreducible_orbits"][0].update(sf_theta=True), "expected an integer"),
        (lambda d: d.update(components={}), "components: expected a list"),
        (lambda d: d.update(extra=1), "unknown field"),
    ],
)
def test_malformed_documents_name_the_field(mutate, fragment):
    doc = json.loads(dumps(snapshot()))
    mutate(doc)
    with pytest.raises(MalformedModuliFile, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        loads(json.dumps(doc))


def test_bad_json_reports_line():
    with pytest.raises(MalformedModuliFile, match="line 2"):
        loads('{\n  "name": }')


def test_bound_warnings_are_not_violations():
    c = make_component(1, 0, 0, 0, 0)
    o = make_orbit(c, 0, 2)  # above the upper extremal flow
    m = ModuliData(components=(c,), reducible_orbits=(o,))
    assert validate(m) == []
    assert [w.rule for w in bound_warnings(m)] == ["extremal upper bound"]
    assert [v.rule for v in validate(m, strict_bounds=True)] == ["extremal upper bound"]


@pytest.mark.parametrize("rule, m", CRAFTED, ids=lambda x: x if isinstance(x, str) else "")
def test_crafted_violation_is_caught(rule, m):
    assert rule in rules(m)
