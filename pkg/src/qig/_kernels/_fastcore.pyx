# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False
"""Compiled implementation of the hot kernels.

Same algorithms and thresholds as `_pycore`; plain C loops, GIL released
in the inner work so sweeps can thread.
"""

import numpy as np

from libc.math cimport exp, log2, sqrt

BACKEND_NAME = "compiled"

cdef int _SWEEP_CAP = 100
cdef double _JACOBI_THRESHOLD = 1e-14


cdef double _offdiag_norm(double complex[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += abs(a[i, j]) * abs(a[i, j])
    return sqrt(acc)


cdef double _frobenius(double complex[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            acc += abs(a[i, j]) * abs(a[i, j])
    return sqrt(acc)


cdef int _jacobi_inplace(double complex[:, ::1] a, double[:] out, Py_ssize_t n) nogil:
    """Diagonalize in place; fill `out` with unsorted diagonal. 0 ok, 1 no convergence."""
    cdef Py_ssize_t p, q, k, sweep
    cdef double tol, skip, b, alpha, gamma, theta, t, c, s
    cdef double complex phase, akp, akq
    cdef double scale = _frobenius(a, n)
    if scale < 1.0:
        scale = 1.0
    tol = _JACOBI_THRESHOLD * scale
    skip = tol / (4.0 * n)
    for sweep in range(_SWEEP_CAP + 1):
        if _offdiag_norm(a, n) <= tol:
            for k in range(n):
                out[k] = a[k, k].real
            return 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = abs(a[p, q])
                if b <= skip:
                    continue
                alpha = a[p, p].real
                gamma = a[q, q].real
                theta = (gamma - alpha) / (2.0 * b)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (theta - sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                phase = a[p, q] / b
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phase.conjugate() * akq
                    a[k, q] = s * phase * akp + c * akq
                    a[p, k] = a[k, p].conjugate()
                    a[q, k] = a[k, q].conjugate()
                a[p, p] = alpha - t * b
                a[q, q] = gamma + t * b
                a[p, q] = 0.0
                a[q, p] = 0.0
    return 1


def jacobi_eigenvalues(matrix):
    """Eigenvalues of a complex Hermitian matrix, descending.

    Cyclic Jacobi rotations; converged when the off-diagonal Frobenius norm
    drops below 1e-14 (relative to the matrix norm), capped at 100 sweeps.
    Raises ArithmeticError when the cap is hit; the caller translates.
    """
    a = np.array(matrix, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    out = np.empty(n, dtype=np.float64)
    cdef double complex[:, ::1] av = a
    cdef double[:] ov = out
    cdef int status
    with nogil:
        status = _jacobi_inplace(av, ov, n)
    if status != 0:
        raise ArithmeticError("jacobi eigenvalue iteration did not converge")
    return np.sort(out)[::-1].copy()


cdef inline double _hb(double lam) nogil:
    if lam <= 0.0 or lam >= 1.0:
        return 0.0
    return -(lam * log2(lam) + (1.0 - lam) * log2(1.0 - lam))


def iaz_curve(p, z, emt):
    """Measuring-device gain along z per grid point.

    p: member weights; z: member z-components (r cos theta); emt[k]: squared
    coherence decay exp(-(g_k/delta)^2) per grid point.
    """
    p_arr = np.ascontiguousarray(p, dtype=np.float64)
    z_arr = np.ascontiguousarray(z, dtype=np.float64)
    e_arr = np.ascontiguousarray(emt, dtype=np.float64)
    out = np.empty(e_arr.shape[0], dtype=np.float64)
    cdef double[::1] pv = p_arr
    cdef double[::1] zv = z_arr
    cdef double[::1] ev = e_arr
    cdef double[::1] ov = out
    cdef Py_ssize_t m = pv.shape[0]
    cdef Py_ssize_t npts = ev.shape[0]
    cdef Py_ssize_t i, k
    cdef double zbar = 0.0
    cdef double a, gain, acc, zi
    with nogil:
        for i in range(m):
            zbar += pv[i] * zv[i]
        for k in range(npts):
            a = ev[k]
            gain = _hb(0.5 * (1.0 + sqrt(zbar * zbar + (1.0 - zbar * zbar) * a)))
            acc = 0.0
            for i in range(m):
                zi = zv[i]
                acc += pv[i] * _hb(0.5 * (1.0 + sqrt(zi * zi + (1.0 - zi * zi) * a)))
            gain -= acc
            if gain < 0.0:
                gain = 0.0
            ov[k] = gain
    return out


def iax_curve(p, x, emh):
    """Receiver x-measurement gain per grid point after z-coupling.

    p: member weights; x: member x-components (r sin theta cos phi);
    emh[k]: coherence decay exp(-(g_k/delta)^2 / 2) per grid point.
    """
    p_arr = np.ascontiguousarray(p, dtype=np.float64)
    x_arr = np.ascontiguousarray(x, dtype=np.float64)
    e_arr = np.ascontiguousarray(emh, dtype=np.float64)
    out = np.empty(e_arr.shape[0], dtype=np.float64)
    cdef double[::1] pv = p_arr
    cdef double[::1] xv = x_arr
    cdef double[::1] ev = e_arr
    cdef double[::1] ov = out
    cdef Py_ssize_t m = pv.shape[0]
    cdef Py_ssize_t npts = ev.shape[0]
    cdef Py_ssize_t i, k
    cdef double xbar = 0.0
    cdef double d, gain, acc
    with nogil:
        for i in range(m):
            xbar += pv[i] * xv[i]
        for k in range(npts):
            d = ev[k]
            gain = _hb(0.5 * (1.0 + xbar * d))
            acc = 0.0
            for i in range(m):
                acc += pv[i] * _hb(0.5 * (1.0 + xv[i] * d))
            gain -= acc
            if gain < 0.0:
                gain = 0.0
            ov[k] = gain
    return out
