"""Pure NumPy fallback kernels.

These are the reference implementations of the two hot loops: the cyclic
Jacobi eigensolver for dense Hermitian matrices (dims <= 32) and the
truncated Poisson click-probability sums used inside the attenuation
solvers.  The compiled module in ``_ext.pyx`` mirrors this file statement
for statement; parity between the two backends is asserted in the tests.
"""
from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

_MAX_SWEEPS = 60
_OFF_TOL = 1e-13


def jacobi_eigh(a):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``v``.  Sweeps run over the strict upper
    triangle in row-major order; convergence is declared when the
    off-diagonal Frobenius norm drops below ``1e-13 * max(1, |A|_F)``.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v

    tol = _OFF_TOL * max(1.0, float(np.linalg.norm(a)))
    strict_off = ~np.eye(n, dtype=bool)
    for _ in range(_MAX_SWEEPS):
        # sum only the off-diagonal entries: differencing the total and the
        # diagonal Frobenius norms cancels catastrophically near convergence
        off = math.sqrt(float(np.sum(np.abs(a[strict_off]) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = float((a[q, q].real - a[p, p].real) / (2.0 * mag))
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)  # rotation angle ~ 1/(2 tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * np.conj(phase)
                # columns, then rows (A <- J^H A J), then accumulate V <- V J
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - spc * col_q
                a[:, q] = sp * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = spc * row_p + c * row_q
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq
    else:
        raise RuntimeError("Jacobi eigensolver failed to converge")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def poisson_click_sum(mu, eta, offset, nmax):
    """Sum over n > offset of p(n, mu) * (1 - (1 - eta)^(n - offset)).

    Poisson weights come from the stable multiplicative recurrence; the
    caller chooses ``nmax`` so that the neglected tail is below 1e-12.
    """
    if mu < 0.0:
        raise ValueError("mu must be non-negative")
    if mu == 0.0:
        return 0.0
    total = 0.0
    p = math.exp(-mu)
    loss = 1.0 - eta
    for n in range(1, nmax + 1):
        p *= mu / n
        if n > offset:
            total += p * (1.0 - loss ** (n - offset))
    return total


def poisson_photon_sum(mu, start, nmax):
    """Sum over n >= start of p(n, mu) * (n - start + 1).

    Expected number of forwardable photons per pulse when the first
    ``start - 1`` photons of every pulse are consumed.
    """
    if mu < 0.0:
        raise ValueError("mu must be non-negative")
    if mu == 0.0:
        return 0.0
    total = 0.0
    p = math.exp(-mu)
    for n in range(1, nmax + 1):
        p *= mu / n
        if n >= start:
            total += p * (n - start + 1)
    return total
