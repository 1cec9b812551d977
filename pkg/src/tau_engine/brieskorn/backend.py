"""Pick the descent implementation at import time.

The compiled kernel is used when it was built; otherwise the numpy version.
Set ``TAU_ENGINE_PURE_PYTHON=1`` to force numpy and ``TAU_ENGINE_THREADS``
to cap the OpenMP thread count.
"""

from __future__ import annotations

import os

from tau_engine.brieskorn import _descent_py

STATUS_NAMES = ("converged", "stationary", "step_underflow", "stagnated", "max_iter")

_compiled = None
if not os.environ.get("TAU_ENGINE_PURE_PYTHON"):
    try:
        from tau_engine.brieskorn import _kernel as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"


def default_threads() -> int:
    env = os.environ.get("TAU_ENGINE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


def descend(u0, eig, target, max_iter=5000, f_tol=1e-24, step0=0.1, threads=None, backend=None):
    """Descend every start in ``u0``; returns ``(u, f, iterations, status)``."""
    name = backend or BACKEND
    if threads is None:
        threads = default_threads()
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("the compiled kernel is not available")
        return _compiled.descend(u0, eig, target, max_iter, f_tol, step0, threads)
    if name == "numpy":
        return _descent_py.descend(u0, eig, target, max_iter, f_tol, step0)
    raise ValueError(f"unknown backend {name!r}")
