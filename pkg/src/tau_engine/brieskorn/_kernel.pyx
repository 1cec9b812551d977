# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False, language_level=3
"""Compiled descent for ||x1 x2 x3 - c||_F^2 over products of conjugacy classes.

Each restart is independent and runs without the GIL; restarts are spread
over OpenMP threads.  Matrices are stored row-major in 3x3 slots and only
the leading n x n block is used, so n = 2 and n = 3 share one code path.
The numpy module ``_descent_py`` implements the same iteration.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt

cnp.import_array()

ctypedef double complex cplx

cdef extern from "complex.h" nogil:
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)

# status codes, mirrored in _descent_py
cdef enum:
    CONVERGED = 0
    STATIONARY = 1
    STEP_UNDERFLOW = 2
    STAGNATED = 3
    MAX_ITER = 4


cdef inline double abs2(cplx z) noexcept nogil:
    return creal(z) * creal(z) + cimag(z) * cimag(z)


cdef inline void mm(const cplx* a, const cplx* b, cplx* out, int n) noexcept nogil:
    cdef int i, j, k
    cdef cplx s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + a[3 * i + k] * b[3 * k + j]
            out[3 * i + j] = s


cdef inline void build_x(const cplx* u, const cplx* d, cplx* x, int n) noexcept nogil:
    # x_g = u_g diag(d_g) u_g^H
    cdef int g, i, j, k
    cdef cplx s
    for g in range(3):
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s = s + u[9 * g + 3 * i + k] * d[3 * g + k] * conj(u[9 * g + 3 * j + k])
                x[9 * g + 3 * i + j] = s


cdef inline double residual(const cplx* x, const cplx* c, cplx* p, int n) noexcept nogil:
    cdef cplx t[9]
    cdef int i, j
    cdef double f = 0
    mm(x, x + 9, t, n)
    mm(t, x + 18, p, n)
    for i in range(n):
        for j in range(n):
            f += abs2(p[3 * i + j] - c[3 * i + j])
    return f


cdef inline double gradient(const cplx* x, const cplx* p, const cplx* c, cplx* grad, int n) noexcept nogil:
    # M1 = P R^H - S1, M2 = S1 - S2, M3 = S2 - S3 with A = R^H x1,
    # S1 = x2 x3 A, S2 = x3 A x2, S3 = A x2 x3; gradient G = M^H - M
    cdef cplx rh[9]
    cdef cplx a[9]
    cdef cplx t23[9]
    cdef cplx s1[9]
    cdef cplx s2[9]
    cdef cplx s3[9]
    cdef cplx prh[9]
    cdef cplx t[9]
    cdef cplx m[27]
    cdef int i, j, g
    cdef double g2 = 0
    for i in range(n):
        for j in range(n):
            rh[3 * i + j] = conj(p[3 * j + i] - c[3 * j + i])
    mm(rh, x, a, n)
    mm(x + 9, x + 18, t23, n)
    mm(t23, a, s1, n)
    mm(x + 18, a, t, n)
    mm(t, x + 9, s2, n)
    mm(a, t23, s3, n)
    mm(p, rh, prh, n)
    for i in range(n):
        for j in range(n):
            m[3 * i + j] = prh[3 * i + j] - s1[3 * i + j]
            m[9 + 3 * i + j] = s1[3 * i + j] - s2[3 * i + j]
            m[18 + 3 * i + j] = s2[3 * i + j] - s3[3 * i + j]
    for g in range(3):
        for i in range(n):
            for j in range(n):
                grad[9 * g + 3 * i + j] = conj(m[9 * g + 3 * j + i]) - m[9 * g + 3 * i + j]
                g2 += abs2(grad[9 * g + 3 * i + j])
    return g2


cdef inline void retract(const cplx* u, const cplx* grad, double t, cplx* out, int n) noexcept nogil:
    # out_g = Q factor of (I - t G_g) u_g, Gram-Schmidt on columns (positive real diagonal of R)
    cdef cplx b[9]
    cdef cplx r
    cdef double nrm
    cdef int g, i, j, k
    for g in range(3):
        for i in range(n):
            for j in range(n):
                r = u[9 * g + 3 * i + j]
                for k in range(n):
                    r = r - t * grad[9 * g + 3 * i + k] * u[9 * g + 3 * k + j]
                b[3 * i + j] = r
        for j in range(n):
            for k in range(j):
                r = 0
                for i in range(n):
                    r = r + conj(b[3 * i + k]) * b[3 * i + j]
                for i in range(n):
                    b[3 * i + j] = b[3 * i + j] - r * b[3 * i + k]
            nrm = 0
            for i in range(n):
                nrm += abs2(b[3 * i + j])
            nrm = sqrt(nrm)
            for i in range(n):
                b[3 * i + j] = b[3 * i + j] / nrm
        for i in range(n):
            for j in range(n):
                out[9 * g + 3 * i + j] = b[3 * i + j]


cdef int descend_one(cplx* u, const cplx* d, const cplx* c, int n, int max_iter, double f_tol,
                     double step0, double* f_out, int* it_out) noexcept nogil:
    cdef cplx x[27]
    cdef cplx xt[27]
    cdef cplx ut[27]
    cdef cplx grad[27]
    cdef cplx p[9]
    cdef cplx pt[9]
    cdef double f, ft, g2, t = step0, checkpoint
    cdef int it = 0, k, status = MAX_ITER
    build_x(u, d, x, n)
    f = residual(x, c, p, n)
    checkpoint = f
    while it < max_iter:
        if f <= f_tol:
            status = CONVERGED
            break
        g2 = gradient(x, p, c, grad, n)
        if g2 <= 1e-32:
            status = STATIONARY
            break
        retract(u, grad, t, ut, n)
        build_x(ut, d, xt, n)
        ft = residual(xt, c, pt, n)
        if ft <= f - 1e-4 * t * g2:
            for k in range(27):
                u[k] = ut[k]
                x[k] = xt[k]
            for k in range(9):
                p[k] = pt[k]
            f = ft
            t = t * 2.0
            if t > 10.0:
                t = 10.0
        else:
            t = t * 0.5
            if t < 1e-12:
                status = STEP_UNDERFLOW
                it += 1
                break
        it += 1
        if it % 500 == 0:
            if f > 1e-6 and f > 0.999 * checkpoint:
                status = STAGNATED
                break
            checkpoint = f
    if status == MAX_ITER and f <= f_tol:
        status = CONVERGED
    f_out[0] = f
    it_out[0] = it
    return status


def descend(u0, eig, target, int max_iter=5000, double f_tol=1e-24, double step0=0.1, int threads=1):
    """Run the descent from every start in ``u0`` (shape (R, 3, n, n)).

    Returns ``(u, f, iterations, status)``.
    """
    u_in = np.ascontiguousarray(u0, dtype=np.complex128)
    cdef int R = u_in.shape[0]
    cdef int n = u_in.shape[2]
    if u_in.shape[1] != 3 or u_in.shape[3] != n or n < 1 or n > 3:
        raise ValueError("u0 must have shape (R, 3, n, n) with n <= 3")
    ubuf = np.zeros((R, 3, 3, 3), dtype=np.complex128)
    ubuf[:, :, :n, :n] = u_in
    dbuf = np.zeros((3, 3), dtype=np.complex128)
    dbuf[:, :n] = np.asarray(eig, dtype=np.complex128)
    cbuf = np.zeros((3, 3), dtype=np.complex128)
    cbuf[:n, :n] = np.asarray(target, dtype=np.complex128)
    f = np.empty(R, dtype=np.float64)
    iters = np.empty(R, dtype=np.intc)
    status = np.empty(R, dtype=np.intc)

    cdef cplx[:, :, :, ::1] uv = ubuf
    cdef cplx[:, ::1] dv = dbuf
    cdef cplx[:, ::1] cv = cbuf
    cdef double[::1] fv = f
    cdef int[::1] itv = iters
    cdef int[::1] sv = status
    cdef int r
    if threads < 1:
        threads = 1
    with nogil:
        for r in prange(R, num_threads=threads, schedule="dynamic"):
            sv[r] = descend_one(&uv[r, 0, 0, 0], &dv[0, 0], &cv[0, 0], n, max_iter, f_tol, step0,
                                &fv[r], &itv[r])
    return ubuf[:, :, :n, :n].copy(), f, iters.astype(np.int64), status.astype(np.int64)
