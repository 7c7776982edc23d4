# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic Jacobi eigensolver and Poisson click sums.

Statement-for-statement mirror of ``_py.py`` (same sweep order, same
convergence threshold) so that both backends agree to rounding error.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, sqrt

cnp.import_array()

BACKEND_NAME = "compiled"

cdef int _MAX_SWEEPS = 60
cdef double _OFF_TOL = 1e-13


def jacobi_eigh(a_in):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ascending and orthonormal
    eigenvectors in the columns of ``v``.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(a_in, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v

    cdef double fro = 0.0, off, tol, mag, tau, t, c, s
    cdef double complex apq, phase, sp, spc, tp, tq
    cdef Py_ssize_t p, q, k, sweep
    cdef bint converged = 0

    for p in range(n):
        for q in range(n):
            fro += (a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
    tol = _OFF_TOL * max(1.0, sqrt(fro))

    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
        off = sqrt(off)
        if off < tol:
            converged = 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if fabs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)  # rotation angle ~ 1/(2 tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()
                for k in range(n):
                    tp = a[k, p]
                    tq = a[k, q]
                    a[k, p] = c * tp - spc * tq
                    a[k, q] = sp * tp + c * tq
                for k in range(n):
                    tp = a[p, k]
                    tq = a[q, k]
                    a[p, k] = c * tp - sp * tq
                    a[q, k] = spc * tp + c * tq
                for k in range(n):
                    tp = v[k, p]
                    tq = v[k, q]
                    v[k, p] = c * tp - spc * tq
                    v[k, q] = sp * tp + c * tq
    if not converged:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
        if sqrt(off) >= tol:
            raise RuntimeError("Jacobi eigensolver failed to converge")

    w = np.diag(np.asarray(a)).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.asarray(v)[:, order]


def poisson_click_sum(double mu, double eta, long offset, long nmax):
    """Sum over n > offset of p(n, mu) * (1 - (1 - eta)^(n - offset))."""
    if mu < 0.0:
        raise ValueError("mu must be non-negative")
    if mu == 0.0:
        return 0.0
    cdef double total = 0.0
    cdef double p = exp(-mu)
    cdef double loss = 1.0 - eta
    cdef double f
    cdef long n, j
    for n in range(1, nmax + 1):
        p *= mu / n
        if n > offset:
            f = 1.0
            for j in range(n - offset):
                f *= loss
            total += p * (1.0 - f)
    return total


def poisson_photon_sum(double mu, long start, long nmax):
    """Sum over n >= start of p(n, mu) * (n - start + 1)."""
    if mu < 0.0:
        raise ValueError("mu must be non-negative")
    if mu == 0.0:
        return 0.0
    cdef double total = 0.0
    cdef double p = exp(-mu)
    cdef long n
    for n in range(1, nmax + 1):
        p *= mu / n
        if n >= start:
            total += p * (n - start + 1)
    return total
