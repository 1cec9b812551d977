"""Pure numpy descent, batched over restarts.

Same iteration as the compiled kernel: one Armijo trial per iteration,
step doubled on acceptance and halved on rejection, QR retraction with a
positive real diagonal.  Restarts advance in lockstep; finished ones drop
out of the active set.
"""

import numpy as np

CONVERGED, STATIONARY, STEP_UNDERFLOW, STAGNATED, MAX_ITER = range(5)


def _build_x(u, d):
    return (u * d[None, :, None, :]) @ np.conj(np.swapaxes(u, -1, -2))


def _product(x):
    return x[:, 0] @ x[:, 1] @ x[:, 2]


def _residual(p, c):
    return np.sum(np.abs(p - c) ** 2, axis=(-1, -2))


def gradient(x, p, c):
    """Riemannian gradient for left perturbations u -> exp(K) u; shape (R, 3, n, n)."""
    rh = np.conj(np.swapaxes(p - c, -1, -2))
    a = rh @ x[:, 0]
    t23 = x[:, 1] @ x[:, 2]
    s1 = t23 @ a
    s2 = x[:, 2] @ a @ x[:, 1]
    s3 = a @ t23
    m = np.stack([p @ rh - s1, s1 - s2, s2 - s3], axis=1)
    return np.conj(np.swapaxes(m, -1, -2)) - m


def retract(u, grad, t):
    n = u.shape[-1]
    b = (np.eye(n) - t[:, None, None, None] * grad) @ u
    q, r = np.linalg.qr(b)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[..., None, :]


def descend(u0, eig, target, max_iter=5000, f_tol=1e-24, step0=0.1, threads=1):
    u = np.array(u0, dtype=np.complex128, copy=True)
    d = np.asarray(eig, dtype=np.complex128)
    c = np.asarray(target, dtype=np.complex128)
    n_restarts = u.shape[0]
    x = _build_x(u, d)
    p = _product(x)
    f = _residual(p, c)
    t = np.full(n_restarts, float(step0))
    iters = np.zeros(n_restarts, dtype=np.int64)
    status = np.full(n_restarts, MAX_ITER, dtype=np.int64)
    checkpoint = f.copy()
    active = np.ones(n_restarts, dtype=bool)
    for _ in range(max_iter):
        done = active & (f <= f_tol)
        status[done] = CONVERGED
        active &= ~done
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        grad = gradient(x[idx], p[idx], c)
        g2 = np.sum(np.abs(grad) ** 2, axis=(1, 2, 3))
        flat = g2 <= 1e-32
        status[idx[flat]] = STATIONARY
        active[idx[flat]] = False
        keep = ~flat
        idx, grad, g2 = idx[keep], grad[keep], g2[keep]
        if idx.size == 0:
            break
        ut = retract(u[idx], grad, t[idx])
        xt = _build_x(ut, d)
        pt = _product(xt)
        ft = _residual(pt, c)
        ok = ft <= f[idx] - 1e-4 * t[idx] * g2
        acc = idx[ok]
        u[acc], x[acc], p[acc], f[acc] = ut[ok], xt[ok], pt[ok], ft[ok]
        t[acc] = np.minimum(t[acc] * 2.0, 10.0)
        rej = idx[~ok]
        t[rej] *= 0.5
        iters[idx] += 1
        under = rej[t[rej] < 1e-12]
        status[under] = STEP_UNDERFLOW
        active[under] = False
        check = idx[(iters[idx] % 500 == 0) & active[idx]]
        stuck = check[(f[check] > 1e-6) & (f[check] > 0.999 * checkpoint[check])]
        status[stuck] = STAGNATED
        active[stuck] = False
        checkpoint[check] = f[check]
    status[active & (f <= f_tol)] = CONVERGED
    return u, f, iters, status
