"""Exact data model for snapshots of a perturbed flat SU(3) moduli space.

A snapshot records, for one generic small perturbation, the integer and
rational data attached to every gauge orbit: spectral flows from the trivial
connection, the h-perp spectral flows needed by the reducible correction
term, and Chern-Simons lifts.  Connections themselves are never stored.

Rationals are :class:`fractions.Fraction` throughout.  On disk a snapshot
is a JSON document whose rationals are strings such as ``"3/2"`` or ``"-1"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "ReducibleComponent",
    "ReducibleOrbit",
    "IrreducibleOrbit",
    "ModuliData",
    "Violation",
    "InvalidModuliError",
    "MalformedModuliFile",
    "validate",
    "bound_warnings",
    "require_valid",
    "deck_shift",
    "orbit_keys",
    "to_dict",
    "from_dict",
    "dumps",
    "loads",
    "load",
    "dump",
    "EMPTY",
]


class InvalidModuliError(ValueError):
    """Raised when an operation needs valid moduli data and did not get it."""

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid moduli data: {lines}{more}")


class MalformedModuliFile(ValueError):
    """The JSON document does not have the moduli file layout."""


@dataclass(frozen=True)
class ReducibleComponent:
    """A connected component of the flat reducible stratum.

    ``sf_hperp_theta_plus``/``_minus`` are h-perp spectral flows from the
    trivial connection to the two extremal flat points, for one fixed lift of
    the component; ``cs_plus``/``cs_minus`` are the matching Chern-Simons
    lifts.  ``h1_minus`` is the h-perp first cohomology at the minimising
    point.
    """

    id: int
    cs_mod1: Fraction
    alpha_plus: Fraction
    alpha_minus: Fraction
    h1_minus: int
    sf_hperp_theta_plus: int
    sf_hperp_theta_minus: int
    cs_plus: Fraction
    cs_minus: Fraction


@dataclass(frozen=True)
class ReducibleOrbit:
    """A perturbed-flat reducible orbit near the component ``component``."""

    component: int
    sf_theta: int
    sf_from_plus: int
    sf_from_minus: int
    sf_hperp_theta: int
    cs_hat: Fraction


@dataclass(frozen=True)
class IrreducibleOrbit:
    sf_theta: int


@dataclass(frozen=True)
class ModuliData:
    name: str = ""
    perturbation_label: str = ""
    components: tuple[ReducibleComponent, ...] = ()
    reducible_orbits: tuple[ReducibleOrbit, ...] = ()
    irreducible_orbits: tuple[IrreducibleOrbit, ...] = ()

    def component(self, cid: int) -> ReducibleComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(f"no component with id {cid}")

    def component_map(self) -> dict[int, ReducibleComponent]:
        return {c.id: c for c in self.components}


EMPTY = ModuliData(name="empty", perturbation_label="0")


@dataclass(frozen=True)
class Violation:
    rule: str
    key: str
    detail: str = ""

    def __str__(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"[{self.rule}] {self.key}{tail}"


def _component_violations(c: ReducibleComponent) -> list[Violation]:
    key = f"component:{c.id}"
    out = []
    if not (0 <= c.cs_mod1 < 1):
        out.append(Violation("cs_mod1 range", key, f"cs_mod1={c.cs_mod1} not in [0,1)"))
    if c.h1_minus < 0:
        out.append(Violation("h1 nonnegative", key, f"h1_minus={c.h1_minus}"))
    if c.h1_minus % 4:
        out.append(Violation("h1 mod 4", key, f"h1_minus={c.h1_minus}"))
    for label, lift in (("cs_plus", c.cs_plus), ("cs_minus", c.cs_minus)):
        if (lift - c.cs_mod1).denominator != 1:
            out.append(Violation("cs class", key, f"{label}={lift} is not a lift of {c.cs_mod1}"))
    expected_plus = c.sf_hperp_theta_plus - 4 * c.cs_plus + 2
    if c.alpha_plus != expected_plus:
        out.append(Violation("alpha_plus", key, f"{c.alpha_plus} != {expected_plus}"))
    expected_minus = c.sf_hperp_theta_minus - 4 * c.cs_minus + 2 - c.h1_minus
    if c.alpha_minus != expected_minus:
        out.append(Violation("alpha_minus", key, f"{c.alpha_minus} != {expected_minus}"))
    if c.alpha_minus > c.alpha_plus:
        out.append(Violation("alpha order", key, f"alpha_minus={c.alpha_minus} > alpha_plus={c.alpha_plus}"))
    return out


def _orbit_violations(i: int, o: ReducibleOrbit, comps: dict[int, ReducibleComponent]) -> list[Violation]:
    key = f"reducible:{i}"
    c = comps.get(o.component)
    if c is None:
        return [Violation("unknown component", key, f"component {o.component} does not exist")]
    out = []
    if o.sf_from_plus % 2 or o.sf_from_minus % 2:
        out.append(
            Violation("evenness", key, f"sf_from_plus={o.sf_from_plus}, sf_from_minus={o.sf_from_minus}")
        )
    total = o.sf_from_plus + o.sf_from_minus + c.h1_minus
    if total % 4:
        out.append(Violation("mod 4", key, f"sf_from_plus + sf_from_minus + h1_minus = {total}"))
    if o.sf_hperp_theta != c.sf_hperp_theta_plus + o.sf_from_plus:
        out.append(
            Violation(
                "hperp plus",
                key,
                f"sf_hperp_theta={o.sf_hperp_theta} != {c.sf_hperp_theta_plus} + {o.sf_from_plus}",
            )
        )
    if o.sf_hperp_theta != c.sf_hperp_theta_minus + o.sf_from_minus:
        out.append(
            Violation(
                "hperp minus",
                key,
                f"sf_hperp_theta={o.sf_hperp_theta} != {c.sf_hperp_theta_minus} + {o.sf_from_minus}",
            )
        )
    if not (o.cs_hat == c.cs_plus == c.cs_minus):
        out.append(
            Violation("cs constancy", key, f"cs_hat={o.cs_hat}, cs_plus={c.cs_plus}, cs_minus={c.cs_minus}")
        )
    return out


def bound_warnings(m: ModuliData) -> list[Violation]:
    """Extremality bounds of the h-perp flow on each component.

    For flat data every orbit must satisfy ``sf_from_plus <= 0`` and
    ``sf_from_minus >= -h1_minus``; perturbed orbits are only expected to.
    """
    comps = m.component_map()
    out = []
    for i, o in enumerate(m.reducible_orbits):
        c = comps.get(o.component)
        if c is None:
            continue
        key = f"reducible:{i}"
        if o.sf_hperp_theta > c.sf_hperp_theta_plus:
            out.append(
                Violation("extremal upper bound", key, f"{o.sf_hperp_theta} > {c.sf_hperp_theta_plus}")
            )
        if c.sf_hperp_theta_minus - c.h1_minus > o.sf_hperp_theta:
            out.append(
                Violation(
                    "extremal lower bound",
                    key,
                    f"{c.sf_hperp_theta_minus} - {c.h1_minus} > {o.sf_hperp_theta}",
                )
            )
    return out


def validate(m: ModuliData, *, strict_bounds: bool = False) -> list[Violation]:
    """Every violated data invariant of ``m``; empty when ``m`` is valid.

    With ``strict_bounds`` the extremality bounds (see :func:`bound_warnings`)
    count as violations too, which is how flat solver output is checked.
    """
    out: list[Violation] = []
    seen: set[int] = set()
    for c in m.components:
        if c.id in seen:
            out.append(Violation("duplicate component id", f"component:{c.id}"))
        seen.add(c.id)
        out.extend(_component_violations(c))
    comps = m.component_map()
    for i, o in enumerate(m.reducible_orbits):
        out.extend(_orbit_violations(i, o, comps))
    if strict_bounds:
        out.extend(bound_warnings(m))
    return out


def require_valid(m: ModuliData) -> None:
    problems = validate(m)
    if problems:
        raise InvalidModuliError(problems)


def orbit_keys(m: ModuliData) -> list[str]:
    return [f"reducible:{i}" for i in range(len(m.reducible_orbits))] + [
        f"irreducible:{j}" for j in range(len(m.irreducible_orbits))
    ]


def _parse_key(key: str) -> tuple[str, int]:
    kind, _, idx = key.partition(":")
    try:
        return kind, int(idx)
    except ValueError:
        raise KeyError(f"malformed orbit key {key!r}") from None


def deck_shift(m: ModuliData, key: str, d: int) -> ModuliData:
    """Move the lift of orbit ``key`` by ``d`` deck transformations.

    A degree-d gauge transformation adds 12d to the su(3) spectral flow, of
    which 4d lives on h-perp, and adds d to Chern-Simons.  Reducible orbits
    share their component's lift, so shifting one re-lifts the component and
    every orbit attached to it.
    """
    kind, idx = _parse_key(key)
    if kind == "irreducible":
        if not 0 <= idx < len(m.irreducible_orbits):
            raise KeyError(f"unknown orbit {key!r}")
        orbits = list(m.irreducible_orbits)
        orbits[idx] = IrreducibleOrbit(orbits[idx].sf_theta + 12 * d)
        return replace(m, irreducible_orbits=tuple(orbits))
    if kind != "reducible" or not 0 <= idx < len(m.reducible_orbits):
        raise KeyError(f"unknown orbit {key!r}")
    cid = m.reducible_orbits[idx].component
    comps = tuple(
        replace(
            c,
            sf_hperp_theta_plus=c.sf_hperp_theta_plus + 4 * d,
            sf_hperp_theta_minus=c.sf_hperp_theta_minus + 4 * d,
            cs_plus=c.cs_plus + d,
            cs_minus=c.cs_minus + d,
        )
        if c.id == cid
        else c
        for c in m.components
    )
    orbits = tuple(
        replace(
            o,
            sf_theta=o.sf_theta + 12 * d,
            sf_hperp_theta=o.sf_hperp_theta + 4 * d,
            cs_hat=o.cs_hat + d,
        )
        if o.component == cid
        else o
        for o in m.reducible_orbits
    )
    return replace(m, components=comps, reducible_orbits=orbits)


# --------------------------------------------------------------------------
# JSON file format

_COMPONENT_FIELDS = (
    "id",
    "cs_mod1",
    "alpha_plus",
    "alpha_minus",
    "h1_minus",
    "sf_hperp_theta_plus",
    "sf_hperp_theta_minus",
    "cs_plus",
    "cs_minus",
)
_RATIONAL_COMPONENT_FIELDS = {"cs_mod1", "alpha_plus", "alpha_minus", "cs_plus", "cs_minus"}
_ORBIT_FIELDS = ("component", "sf_theta", "sf_from_plus", "sf_from_minus", "sf_hperp_theta", "cs_hat")
_RATIONAL_ORBIT_FIELDS = {"cs_hat"}


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_rational(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise MalformedModuliFile(f"{where}: expected a rational string like \"p/q\", got {value!r}")
    if not _looks_rational(value):
        raise MalformedModuliFile(f"{where}: bad rational {value!r}")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise MalformedModuliFile(f"{where}: zero denominator in {value!r}") from None


def _looks_rational(s: str) -> bool:
    num, sep, den = s.partition("/")
    digits = num[1:] if num[:1] == "-" else num
    if not digits.isdigit():
        return False
    return not sep or den.isdigit()


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedModuliFile(f"{where}: expected an integer, got {value!r}")
    return value


def _record(raw, fields, rational_fields, where):
    if not isinstance(raw, dict):
        raise MalformedModuliFile(f"{where}: expected an object")
    missing = [f for f in fields if f not in raw]
    extra = [f for f in raw if f not in fields]
    if missing:
        raise MalformedModuliFile(f"{where}: missing field(s) {', '.join(missing)}")
    if extra:
        raise MalformedModuliFile(f"{where}: unknown field(s) {', '.join(extra)}")
    return {
        f: _parse_rational(raw[f], f"{where}.{f}") if f in rational_fields else _parse_int(raw[f], f"{where}.{f}")
        for f in fields
    }


def from_dict(doc) -> ModuliData:
    if not isinstance(doc, dict):
        raise MalformedModuliFile("top level: expected an object")
    allowed = {"name", "perturbation_label", "components", "reducible_orbits", "irreducible_orbits"}
    extra = set(doc) - allowed
    if extra:
        raise MalformedModuliFile(f"top level: unknown field(s) {', '.join(sorted(extra))}")
    for f in ("name", "perturbation_label"):
        if not isinstance(doc.get(f, ""), str):
            raise MalformedModuliFile(f"{f}: expected a string")
    lists = {}
    for f in ("components", "reducible_orbits", "irreducible_orbits"):
        value = doc.get(f, [])
        if not isinstance(value, list):
            raise MalformedModuliFile(f"{f}: expected a list")
        lists[f] = value
    comps = tuple(
        ReducibleComponent(**_record(raw, _COMPONENT_FIELDS, _RATIONAL_COMPONENT_FIELDS, f"components[{i}]"))
        for i, raw in enumerate(lists["components"])
    )
    reds = tuple(
        ReducibleOrbit(**_record(raw, _ORBIT_FIELDS, _RATIONAL_ORBIT_FIELDS, f"reducible_orbits[{i}]"))
        for i, raw in enumerate(lists["reducible_orbits"])
    )
    irrs = tuple(
        IrreducibleOrbit(**_record(raw, ("sf_theta",), set(), f"irreducible_orbits[{i}]"))
        for i, raw in enumerate(lists["irreducible_orbits"])
    )
    return ModuliData(
        name=doc.get("name", ""),
        perturbation_label=doc.get("perturbation_label", ""),
        components=comps,
        reducible_orbits=reds,
        irreducible_orbits=irrs,
    )


def to_dict(m: ModuliData) -> dict:
    def enc(obj, fields, rational_fields):
        return {
            f: format_rational(getattr(obj, f)) if f in rational_fields else getattr(obj, f) for f in fields
        }

    return {
        "name": m.name,
        "perturbation_label": m.perturbation_label,
        "components": [enc(c, _COMPONENT_FIELDS, _RATIONAL_COMPONENT_FIELDS) for c in m.components],
        "reducible_orbits": [enc(o, _ORBIT_FIELDS, _RATIONAL_ORBIT_FIELDS) for o in m.reducible_orbits],
        "irreducible_orbits": [{"sf_theta": o.sf_theta} for o in m.irreducible_orbits],
    }


def dumps(m: ModuliData) -> str:
    return json.dumps(to_dict(m), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> ModuliData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedModuliFile(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def load(path) -> ModuliData:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(m: ModuliData, path) -> None:
    from tau_engine._io import atomic_write_text

    atomic_write_text(path, dumps(m))


def make_component(
    id: int,
    cs: Fraction | int | str,
    sf_hperp_theta_plus: int,
    sf_hperp_theta_minus: int,
    h1_minus: int = 0,
) -> ReducibleComponent:
    """Build a component whose alpha values and cs class follow from its lifts."""
    cs = Fraction(cs)
    return ReducibleComponent(
        id=id,
        cs_mod1=cs - (cs.numerator // cs.denominator),
        alpha_plus=sf_hperp_theta_plus - 4 * cs + 2,
        alpha_minus=sf_hperp_theta_minus - 4 * cs + 2 - h1_minus,
        h1_minus=h1_minus,
        sf_hperp_theta_plus=sf_hperp_theta_plus,
        sf_hperp_theta_minus=sf_hperp_theta_minus,
        cs_plus=cs,
        cs_minus=cs,
    )


def make_orbit(component: ReducibleComponent, sf_theta: int, sf_from_plus: int) -> ReducibleOrbit:
    """A reducible orbit on ``component``; the minus-side flow is forced by consistency."""
    sf_hperp = component.sf_hperp_theta_plus + sf_from_plus
    return ReducibleOrbit(
        component=component.id,
        sf_theta=sf_theta,
        sf_from_plus=sf_from_plus,
        sf_from_minus=sf_hperp - component.sf_hperp_theta_minus,
        sf_hperp_theta=sf_hperp,
        cs_hat=component.cs_plus,
    )


def with_orbits(
    m: ModuliData,
    reducible: Iterable[ReducibleOrbit] | None = None,
    irreducible: Iterable[IrreducibleOrbit] | None = None,
) -> ModuliData:
    kw = {}
    if reducible is not None:
        kw["reducible_orbits"] = tuple(reducible)
    if irreducible is not None:
        kw["irreducible_orbits"] = tuple(irreducible)
    return replace(m, **kw)
