"""Hand-built invalid snapshots; each one breaks (at least) the rule it is listed under."""

from dataclasses import replace
from fractions import Fraction

from tau_engine.moduli import IrreducibleOrbit, ModuliData, make_component, make_orbit

F = Fraction


def _base():
    c = make_component(1, F(1, 3), 2, -2, 4)
    o = make_orbit(c, 1, -2)
    return c, o


def _one(c=None, o=None, extra_components=()):
    base_c, base_o = _base()
    c = c or base_c
    o = o or base_o
    return ModuliData("crafted", "h", (c,) + tuple(extra_components), (o,), (IrreducibleOrbit(3),))


def _comp(**kw):
    c, _ = _base()
    return _one(c=replace(c, **kw))


def _orbit(**kw):
    _, o = _base()
    return _one(o=replace(o, **kw))


# alpha_minus > alpha_plus but otherwise consistent
_INVERTED = make_component(1, F(1, 3), -6, -2, 0)

# extremal lifts differing by 2 mod 4 leave no room for a consistent orbit
_ODD_GAP = make_component(1, 0, 2, 0, 0)

CRAFTED = [
    # (rule expected, snapshot)
    ("evenness", _orbit(sf_from_plus=-1, sf_from_minus=1)),
    ("evenness", _orbit(sf_from_plus=-3, sf_from_minus=-1, sf_hperp_theta=-1)),
    ("mod 4", _orbit(sf_from_plus=0, sf_from_minus=-2, sf_hperp_theta=2)),
    ("mod 4", _orbit(sf_from_plus=-4, sf_from_minus=2, sf_hperp_theta=-2)),
    ("h1 mod 4", _comp(h1_minus=2, alpha_minus=F(-2, 3) - 6 + 2)),
    ("h1 mod 4", _comp(h1_minus=6, alpha_minus=F(-4, 3) - 6 + 2 - 6 + 4)),
    ("h1 nonnegative", _comp(h1_minus=-4, alpha_minus=F(-4, 3) + 4)),
    ("cs_mod1 range", _comp(cs_mod1=F(4, 3))),
    ("cs_mod1 range", _comp(cs_mod1=F(-1, 3))),
    ("cs class", _comp(cs_mod1=F(1, 2))),
    ("alpha_plus", _comp(alpha_plus=F(7))),
    ("alpha_minus", _comp(alpha_minus=F(-9))),
    ("hperp plus", _orbit(sf_hperp_theta=2)),
    ("unknown component", _orbit(component=7)),
    ("cs constancy", _orbit(cs_hat=F(4, 3))),
    ("mod 4", _one(c=_ODD_GAP, o=make_orbit(_ODD_GAP, 0, 0))),
    ("evenness", _orbit(sf_from_plus=1, sf_from_minus=5, sf_hperp_theta=3)),
    ("mod 4", _orbit(sf_from_plus=2, sf_from_minus=4, sf_hperp_theta=4)),
    ("duplicate component id", _one(extra_components=(make_component(1, 0, 0, 0, 0),))),
    ("alpha order", _one(c=_INVERTED, o=make_orbit(_INVERTED, 1, 0))),
    ("hperp minus", _orbit(sf_from_minus=6)),
    ("cs class", _comp(cs_minus=F(1, 2), alpha_minus=F(-2) - 2 + 2 - 4)),
]
