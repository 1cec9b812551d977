"""Random-restart search for x1 x2 x3 = c with each x_i in a fixed conjugacy class.

Each x_i is written u_i diag(d_i) u_i^H.  Starts u_i are Haar distributed
and drawn from ``SeedSequence([seed, n, index])``, so a run is reproducible
for a master seed whatever the thread count.  Accepted solutions are
grouped by their character vector; each group becomes one
:class:`RepCluster` whose representative is conjugated to a canonical
position.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from tau_engine.brieskorn import backend
from tau_engine.brieskorn.seifert import RotationAssignment

__all__ = [
    "SolverConfig",
    "RepCluster",
    "SolveDiagnostics",
    "SolveResult",
    "solve_triple",
    "haar_unitary",
    "character_vector",
    "character_key",
    "commutant_dim",
    "local_dimension",
    "canonical_form",
    "polish",
    "cluster_solutions",
    "embed",
    "WORDS",
]

WORDS = ("x1", "x2", "x3", "x1x2", "x1x3", "x2x3", "x1x2x3", "x1x2x1^-1x2^-1")

# a restart whose residual is below this without reaching residual_tol
# is a solution the descent failed to finish, not an empty class product
SUSPECT_RESIDUAL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 200
    max_iter: int = 5000
    residual_tol: float = 1e-18
    cluster_tol: float = 1e-6
    seed: int = 0
    f_tol: float = 1e-24
    step0: float = 0.1
    polish_steps: int = 8
    unitarity_tol: float = 1e-12
    rank_tol: float = 1e-6
    threads: int | None = None
    backend: str | None = None


@dataclass(frozen=True, eq=False)
class RepCluster:
    """One conjugacy class of solutions, represented in canonical position.

    ``matrices`` are 3x3 (the U(2) sector is embedded as diag(x, 1)).
    ``local_dim`` is the dimension of the solution set modulo conjugation
    at the representative; 0 means isolated.
    """

    matrices: tuple[np.ndarray, np.ndarray, np.ndarray]
    residual: float
    characters: tuple[complex, ...]
    commutant_dim: int
    multiplicity: int
    local_dim: int
    unitarity_defect: float
    assignment: RotationAssignment

    @property
    def key(self) -> str:
        return character_key(self.characters)

    def kind(self) -> str:
        if self.commutant_dim == 1:
            return "irreducible"
        if self.commutant_dim == 2:
            return "reducible"
        return "abelian"


@dataclass
class SolveDiagnostics:
    assignment: str
    restarts: int
    accepted: int
    status_counts: dict[str, int]
    best_residual: float
    unresolved: bool
    backend: str


@dataclass
class SolveResult:
    clusters: list[RepCluster]
    diagnostics: SolveDiagnostics = field(repr=False)


def haar_unitary(rng: np.random.Generator, shape: tuple[int, ...], n: int) -> np.ndarray:
    z = (rng.standard_normal(shape + (n, n)) + 1j * rng.standard_normal(shape + (n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def embed(x: np.ndarray) -> np.ndarray:
    if x.shape[-1] == 3:
        return x
    out = np.eye(3, dtype=complex)
    out[: x.shape[0], : x.shape[1]] = x
    return out


def character_vector(xs) -> tuple[complex, ...]:
    x1, x2, x3 = (embed(x) for x in xs)
    i1, i2 = x1.conj().T, x2.conj().T
    words = (x1, x2, x3, x1 @ x2, x1 @ x3, x2 @ x3, x1 @ x2 @ x3, x1 @ x2 @ i1 @ i2)
    return tuple(complex(np.trace(w)) for w in words)


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def character_key(chars) -> str:
    """Stable text key of a character vector, rounded to 6 decimals."""
    return ";".join(f"{_fmt(c.real)}{'+' if _fmt(c.imag)[0] != '-' else ''}{_fmt(c.imag)}j" for c in chars)


def _products(xs):
    p = xs[0] @ xs[1] @ xs[2]
    return p


def _residual(xs, c) -> float:
    return float(np.sum(np.abs(_products(xs) - c) ** 2))


def _skew_basis(n: int) -> list[np.ndarray]:
    basis = []
    for j in range(n):
        e = np.zeros((n, n), complex)
        e[j, j] = 1j
        basis.append(e)
        for k in range(j + 1, n):
            a = np.zeros((n, n), complex)
            a[j, k], a[k, j] = 1, -1
            s = np.zeros((n, n), complex)
            s[j, k] = s[k, j] = 1j
            basis += [a, s]
    return basis


def jacobian(xs) -> np.ndarray:
    """Real Jacobian of x1 x2 x3 under x_i -> exp(K_i) x_i exp(-K_i), K_i skew-Hermitian."""
    n = xs[0].shape[0]
    cols = []
    for i in range(3):
        for b in _skew_basis(n):
            ys = list(xs)
            ys[i] = b @ xs[i] - xs[i] @ b
            dp = _products(ys).ravel()
            cols.append(np.concatenate([dp.real, dp.imag]))
    return np.array(cols).T


def _expm_skew(k: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(-1j * k)
    return (v * np.exp(1j * w)) @ v.conj().T


def _build(us, d):
    # central classes are built exactly, so an all-central product has residual 0
    return [
        di[0] * np.eye(len(di)) if np.all(di == di[0]) else u @ np.diag(di) @ u.conj().T
        for u, di in zip(us, d)
    ]


def polish(us, d, c, steps: int, target: float = 0.0):
    """Gauss-Newton on the conjugation parameters; returns (us, residual)."""
    n = us[0].shape[0]
    basis = _skew_basis(n)
    xs = _build(us, d)
    f = _residual(xs, c)
    for _ in range(steps):
        if f <= target:
            break
        r = (_products(xs) - c).ravel()
        step, *_ = np.linalg.lstsq(jacobian(xs), -np.concatenate([r.real, r.imag]), rcond=None)
        trial = [
            _expm_skew(sum(s * b for s, b in zip(step[i * n * n : (i + 1) * n * n], basis))) @ us[i]
            for i in range(3)
        ]
        xt = _build(trial, d)
        ft = _residual(xt, c)
        if not ft < f:
            break
        us, xs, f = trial, xt, ft
    return us, f


def _nullity(a: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    return a.shape[1] - int(np.sum(s > tol))


def commutant_dim(xs, tol: float = 1e-6) -> int:
    """Complex dimension of {M : x_i M = M x_i for all i}."""
    n = xs[0].shape[0]
    eye = np.eye(n)
    stacked = np.vstack([np.kron(eye, x) - np.kron(x.T, eye) for x in xs])
    return _nullity(stacked, tol)


def _centralizer_dim(d: np.ndarray) -> int:
    # real dimension of the centralizer of diag(d) in u(n)
    counts = Counter(np.round(np.angle(d) / (2 * np.pi) % 1.0, 9) % 1.0)
    return sum(m * m for m in counts.values())


def local_dimension(xs, d, comm: int, tol: float = 1e-6) -> int:
    """Tangent dimension of the solution set modulo conjugation at ``xs``.

    Kernel of the linearized product map, minus the directions that do not
    move any x_i, minus the conjugation orbit.  Positive means the solution
    is not isolated.
    """
    n = xs[0].shape[0]
    null = _nullity(jacobian(xs), tol)
    return null - sum(_centralizer_dim(di) for di in d) - (n * n - comm)


def _blocks(turns) -> list[list[int]]:
    out: list[list[int]] = []
    for i, t in enumerate(turns):
        if out and turns[out[-1][0]] == t:
            out[-1].append(i)
        else:
            out.append([i])
    return out


def canonical_form(us, d, turns1) -> tuple[np.ndarray, ...]:
    """Conjugate so x1 is diagonal (sorted arguments) and fix what freedom is left.

    Inside a repeated eigenvalue block of x1 the block rows of x2 outside the
    block are rotated onto the first basis vector; the remaining diagonal
    torus makes the first row of x2 real and nonnegative where it is nonzero.
    """
    n = us[0].shape[0]
    g = us[0].conj().T
    xs = [g @ x @ g.conj().T for x in _build(us, d)]
    for block in _blocks(list(turns1)):
        if len(block) < 2:
            continue
        rest = [j for j in range(n) if j not in block]
        w = xs[1][np.ix_(block, rest)]
        if not rest or np.linalg.norm(w) < 1e-9:
            continue
        # unitary V on the block with V^H w having one nonzero row
        v, _, _ = np.linalg.svd(w)
        full = np.eye(n, dtype=complex)
        full[np.ix_(block, block)] = v
        xs = [full.conj().T @ x @ full for x in xs]
    phases = np.ones(n, dtype=complex)
    for j in range(1, n):
        for x in (xs[1], xs[2]):
            if abs(x[0, j]) > 1e-9:
                phases[j] = np.conj(x[0, j]) / abs(x[0, j])
                break
    t = np.diag(phases)
    return tuple(t.conj().T @ x @ t for x in xs)


def unitarity_defect(xs) -> float:
    return max(float(np.linalg.norm(x.conj().T @ x - np.eye(x.shape[0]))) for x in xs)


def cluster_solutions(items, tol: float):
    """Greedy grouping of ``(characters, payload)`` pairs, best payload first.

    ``items`` must already be sorted by quality; returns a list of
    ``[characters, payload, count]``.
    """
    groups: list[list] = []
    for chars, payload in items:
        v = np.array(chars)
        for g in groups:
            if np.linalg.norm(v - np.array(g[0])) < tol:
                g[2] += 1
                break
        else:
            groups.append([chars, payload, 1])
    return groups


def solve_triple(ra: RotationAssignment, cfg: SolverConfig = SolverConfig(), index: int = 0) -> SolveResult:
    """Search the class product of ``ra``; ``index`` keys the random stream."""
    n = ra.n
    d = ra.eigenvalues()
    c = ra.target()
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, n, index]))
    u0 = haar_unitary(rng, (cfg.restarts, 3), n)
    u, f, _, status = backend.descend(
        u0, d, c, cfg.max_iter, cfg.f_tol, cfg.step0, threads=cfg.threads, backend=cfg.backend
    )
    counts = Counter(backend.STATUS_NAMES[s] for s in status)
    accepted = []
    for r in np.argsort(f, kind="stable"):
        fr = float(f[r])
        if fr > SUSPECT_RESIDUAL:
            break
        us = list(u[r])
        if fr >= cfg.residual_tol:
            us, fr = polish(us, d, c, cfg.polish_steps, target=cfg.f_tol)
        if fr >= cfg.residual_tol:
            continue
        xs = _build(us, d)
        if unitarity_defect(xs) >= cfg.unitarity_tol:
            continue
        fr = _residual(xs, c)
        accepted.append((character_vector(xs), (fr, us)))
    accepted.sort(key=lambda item: item[1][0])
    clusters = []
    for chars, (fr, us), mult in cluster_solutions(accepted, cfg.cluster_tol):
        xs = _build(us, d)
        comm = commutant_dim(xs, cfg.rank_tol)
        canon = canonical_form(us, d, ra.turns[0])
        clusters.append(
            RepCluster(
                matrices=tuple(embed(x) for x in canon),
                residual=fr,
                characters=chars,
                commutant_dim=comm,
                multiplicity=mult,
                local_dim=local_dimension(xs, d, comm, cfg.rank_tol),
                unitarity_defect=unitarity_defect(canon),
                assignment=ra,
            )
        )
    clusters.sort(key=lambda cl: cl.key)
    best = float(np.min(f)) if len(f) else float("inf")
    diag = SolveDiagnostics(
        assignment=ra.describe(),
        restarts=cfg.restarts,
        accepted=len(accepted),
        status_counts=dict(sorted(counts.items())),
        best_residual=best,
        unresolved=not accepted and best < SUSPECT_RESIDUAL,
        backend=cfg.backend or backend.BACKEND,
    )
    return SolveResult(clusters, diag)
