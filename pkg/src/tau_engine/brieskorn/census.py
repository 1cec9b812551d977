"""Census of flat SU(3) connections on a Brieskorn sphere and the moduli data built from it.

Irreducible classes come from the SU(3) search with scalar fibre image.
Reducible classes are SU(2) x {1}: a reducible SU(3) representation of a
homology sphere is sigma + 1 with sigma in SU(2), and for sigma(h) = -1 the
fibre image diag(-1, -1, 1) is not scalar, so those are searched in U(2)
and embedded.  Scalar-fibre reducibles found by the SU(3) search are kept
only as a cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from tau_engine.brieskorn.seifert import (
    SeifertPresentation,
    enumerate_su2,
    su2_candidates,
    su3_candidates,
)
from tau_engine.brieskorn.solver import (
    RepCluster,
    SolveDiagnostics,
    SolverConfig,
    solve_triple,
)
from tau_engine.moduli import (
    IrreducibleOrbit,
    InvalidModuliError,
    ModuliData,
    make_component,
    make_orbit,
    validate,
)

__all__ = [
    "Census",
    "SignOracle",
    "SignOracleError",
    "enumerate_su3",
    "moduli_from_enumeration",
    "NonIsolatedError",
]


class NonIsolatedError(RuntimeError):
    """A flat class lies on a positive-dimensional family."""


class SignOracleError(ValueError):
    pass


def _merge(clusters: list[RepCluster], tol: float) -> list[RepCluster]:
    out: list[RepCluster] = []
    for c in clusters:
        v = np.array(c.characters)
        if not any(np.linalg.norm(v - np.array(o.characters)) < tol for o in out):
            out.append(c)
    return sorted(out, key=lambda c: c.key)


@dataclass
class Census:
    presentation: SeifertPresentation
    config: SolverConfig
    irreducible: list[RepCluster]
    reducible: list[RepCluster]
    scalar_reducible: list[RepCluster]
    abelian: int
    su2_classes: int
    diagnostics: list[SolveDiagnostics] = field(default_factory=list)

    @property
    def non_isolated(self) -> list[RepCluster]:
        return [c for c in self.irreducible + self.reducible if c.local_dim > 0]

    @property
    def unresolved(self) -> list[SolveDiagnostics]:
        return [d for d in self.diagnostics if d.unresolved]

    def counts(self) -> dict[str, int]:
        return {
            "irreducible": len(self.irreducible),
            "reducible": len(self.reducible),
            "scalar_reducible": len(self.scalar_reducible),
            "abelian": self.abelian,
            "su2_classes": self.su2_classes,
        }

    def problems(self) -> list[str]:
        """Consistency failures; empty for a clean census."""
        out = []
        if len(self.reducible) != self.su2_classes:
            out.append(
                f"reducible census {len(self.reducible)} != rotation-number count {self.su2_classes}"
            )
        keys = {c.key for c in self.reducible}
        for c in self.scalar_reducible:
            if c.key not in keys:
                out.append(f"scalar-fibre reducible {c.key} has no U(2) counterpart")
        for c in self.non_isolated:
            out.append(f"{c.kind()} class {c.key} is not isolated (local dimension {c.local_dim})")
        for d in self.unresolved:
            out.append(f"{d.assignment}: best residual {d.best_residual:.3e} never reached tolerance")
        return out

    def to_dict(self) -> dict:
        def cluster(c: RepCluster) -> dict:
            return {
                "key": c.key,
                "assignment": c.assignment.describe(),
                "characters": [[round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0] for z in c.characters],
                "residual": c.residual,
                "unitarity_defect": c.unitarity_defect,
                "commutant_dim": c.commutant_dim,
                "local_dim": c.local_dim,
                "multiplicity": c.multiplicity,
            }

        p = self.presentation
        return {
            "manifold": p.label,
            "presentation": {"a": list(p.a), "b0": p.b0, "b": list(p.b)},
            "solver": {
                "restarts": self.config.restarts,
                "max_iter": self.config.max_iter,
                "seed": self.config.seed,
                "residual_tol": self.config.residual_tol,
                "cluster_tol": self.config.cluster_tol,
            },
            "counts": self.counts(),
            "problems": self.problems(),
            "irreducible": [cluster(c) for c in self.irreducible],
            "reducible": [cluster(c) for c in self.reducible],
            "scalar_reducible": [cluster(c) for c in self.scalar_reducible],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def enumerate_su3(p: SeifertPresentation, cfg: SolverConfig = SolverConfig()) -> Census:
    """Solve every eigenvalue assignment of both sectors and classify the clusters."""
    irreducible, scalar_reducible, reducible = [], [], []
    abelian = 0
    diagnostics = []
    for i, ra in enumerate(su3_candidates(p)):
        res = solve_triple(ra, cfg, index=i)
        diagnostics.append(res.diagnostics)
        for c in res.clusters:
            kind = c.kind()
            if kind == "irreducible":
                irreducible.append(c)
            elif kind == "reducible":
                scalar_reducible.append(c)
            else:
                abelian += 1
    for i, ra in enumerate(su2_candidates(p)):
        res = solve_triple(ra, cfg, index=i)
        diagnostics.append(res.diagnostics)
        for c in res.clusters:
            # commutant in U(2); irreducible there means reducible nonabelian in SU(3)
            if c.kind() == "irreducible":
                reducible.append(c)
    return Census(
        presentation=p,
        config=cfg,
        irreducible=_merge(irreducible, cfg.cluster_tol),
        reducible=_merge(reducible, cfg.cluster_tol),
        scalar_reducible=_merge(scalar_reducible, cfg.cluster_tol),
        abelian=abelian,
        su2_classes=len(enumerate_su2(p)),
        diagnostics=diagnostics,
    )


_REDUCIBLE_FIELDS = ("sf_theta", "cs", "h1_minus", "sf_hperp_theta_plus", "sf_hperp_theta_minus", "sf_from_plus")


def _parse_key(key: str) -> np.ndarray:
    try:
        return np.array([complex(part) for part in key.split(";")])
    except ValueError:
        raise SignOracleError(f"malformed character key {key!r}") from None


class SignOracle:
    """Spectral-flow data per flat class, looked up by character.

    Every class missing from the table gets ``sf_theta = 0``; reducible
    classes also get zero h-perp data and cs = 0.  File entries map a
    character key (as printed in the census) either to an integer
    ``sf_theta`` or, for reducible classes, to an object with keys among
    ``sf_theta, cs, h1_minus, sf_hperp_theta_plus, sf_hperp_theta_minus,
    sf_from_plus``.  Keys match the nearest census character within 1e-4.
    """

    match_tol = 1e-4

    def __init__(self, entries: dict | None = None):
        self.entries = []
        for key, value in (entries or {}).items():
            if isinstance(value, bool) or not isinstance(value, (int, dict)):
                raise SignOracleError(f"{key}: expected an integer or an object")
            if isinstance(value, dict):
                unknown = set(value) - set(_REDUCIBLE_FIELDS)
                if unknown:
                    raise SignOracleError(f"{key}: unknown fields {sorted(unknown)}")
            self.entries.append((_parse_key(key), key, value))

    @classmethod
    def from_file(cls, path) -> "SignOracle":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise SignOracleError(f"{path}: line {exc.lineno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise SignOracleError(f"{path}: expected a JSON object")
        return cls(doc)

    def lookup(self, cluster: RepCluster) -> dict:
        v = np.array(cluster.characters)
        best = None
        for chars, key, value in self.entries:
            if chars.shape == v.shape:
                dist = float(np.linalg.norm(chars - v))
                if dist < self.match_tol and (best is None or dist < best[0]):
                    best = (dist, value)
        if best is None:
            return {}
        return {"sf_theta": best[1]} if isinstance(best[1], int) else dict(best[1])


def _int_field(data: dict, name: str, key: str) -> int:
    value = data.get(name, 0)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SignOracleError(f"{key}: {name} must be an integer")
    return value


def moduli_from_enumeration(census: Census, sign_oracle: SignOracle | None = None) -> ModuliData:
    """One irreducible orbit per irreducible class, one component and orbit per reducible class.

    Raises :class:`NonIsolatedError` if some class is not isolated and
    :class:`InvalidModuliError` if the oracle data break a data invariant.
    """
    oracle = sign_oracle or SignOracle()
    if census.non_isolated:
        raise NonIsolatedError("; ".join(census.problems()))
    irreducible = []
    for c in census.irreducible:
        data = oracle.lookup(c)
        extra = set(data) - {"sf_theta"}
        if extra:
            raise SignOracleError(f"{c.key}: irreducible classes take only sf_theta, got {sorted(extra)}")
        irreducible.append(IrreducibleOrbit(_int_field(data, "sf_theta", c.key)))
    components, orbits = [], []
    for cid, c in enumerate(census.reducible, start=1):
        data = oracle.lookup(c)
        cs = data.get("cs", "0")
        try:
            cs = Fraction(cs) if isinstance(cs, (int, str)) and not isinstance(cs, bool) else None
        except ValueError:
            cs = None
        if cs is None:
            raise SignOracleError(f"{c.key}: cs must be an integer or a 'p/q' string")
        comp = make_component(
            cid,
            cs,
            _int_field(data, "sf_hperp_theta_plus", c.key),
            _int_field(data, "sf_hperp_theta_minus", c.key),
            _int_field(data, "h1_minus", c.key),
        )
        components.append(comp)
        orbits.append(make_orbit(comp, _int_field(data, "sf_theta", c.key), _int_field(data, "sf_from_plus", c.key)))
    m = ModuliData(
        name=census.presentation.label,
        perturbation_label="flat",
        components=tuple(components),
        reducible_orbits=tuple(orbits),
        irreducible_orbits=tuple(irreducible),
    )
    problems = validate(m, strict_bounds=True)
    if problems:
        raise InvalidModuliError(problems)
    return m

