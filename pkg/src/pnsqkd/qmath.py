"""Dense complex linear algebra and quantum-information primitives.

Everything here is sized for few-qubit problems (dimension <= 32): pure
states, operators, Kraus-style generalized measurements, the symmetric
subspace of n qubits, Helstrom discrimination and the binary mutual
information.  Kronecker convention: the left tensor factor is the slow
index, i.e. qubit 0 is the most significant bit of the basis label.
"""
from __future__ import annotations

import math
from math import lgamma

import numpy as np

from ._kernels import jacobi_eigh

NORM_TOL = 1e-12
HERM_TOL = 1e-12
COMPLETENESS_TOL = 1e-10
PSD_TOL = 1e-10
_UNREACHABLE_P = 1e-14


class StateVector:
    """Pure state on a finite-dimensional space.

    Amplitudes are stored as a 1-D complex array.  Construction checks
    normalization to 1e-12 unless the caller flags the vector as an
    unnormalized intermediate with ``normalized=False``.
    """

    __slots__ = ("a",)

    def __init__(self, amplitudes, normalized=True):
        a = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if a.size == 0:
            raise ValueError("empty state vector")
        if normalized:
            n = float(np.vdot(a, a).real)
            if abs(n - 1.0) > NORM_TOL:
                raise ValueError(f"state not normalized: |psi|^2 = {n!r}")
        self.a = a

    @property
    def dim(self):
        return self.a.size

    @property
    def n_qubits(self):
        n = int(round(math.log2(self.dim)))
        if 2**n != self.dim:
            raise ValueError("dimension is not a power of two")
        return n

    def norm(self):
        return float(np.linalg.norm(self.a))

    def normalize(self):
        return StateVector(self.a / np.linalg.norm(self.a))

    def overlap(self, other):
        """Inner product <self|other>."""
        return complex(np.vdot(self.a, other.a))

    def outer(self):
        """Projector |psi><psi| as an Operator."""
        return Operator(np.outer(self.a, self.a.conj()))

    def __repr__(self):
        return f"StateVector({self.a!r})"


class Operator:
    """Dense square operator."""

    __slots__ = ("m",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator must be a square matrix")
        self.m = m

    @property
    def dim(self):
        return self.m.shape[0]

    def dagger(self):
        return Operator(self.m.conj().T)

    def is_hermitian(self, tol=HERM_TOL):
        return bool(np.max(np.abs(self.m - self.m.conj().T)) < tol)

    def trace(self):
        return complex(np.trace(self.m))

    def is_density(self, tol=NORM_TOL, psd_tol=PSD_TOL):
        """Hermitian, unit trace, eigenvalues >= -psd_tol."""
        if not self.is_hermitian(tol):
            return False
        if abs(self.trace().real - 1.0) > tol or abs(self.trace().imag) > tol:
            return False
        w, _ = eig_hermitian(self)
        return bool(w[0] >= -psd_tol)

    def expectation(self, psi):
        """<psi| self |psi>."""
        return complex(np.vdot(psi.a, self.m @ psi.a))

    def __repr__(self):
        return f"Operator({self.m!r})"


class GeneralizedMeasurement:
    """Outcome-labeled set of measurement operators {A_i}.

    Completeness is the standard convention sum_i A_i^dag A_i = identity,
    checked to 1e-10 at construction.
    """

    __slots__ = ("outcomes",)

    def __init__(self, outcomes, check=True):
        self.outcomes = [(str(label), op if isinstance(op, Operator) else Operator(op))
                         for label, op in outcomes]
        if not self.outcomes:
            raise ValueError("measurement needs at least one outcome")
        if check:
            err = self.completeness_defect()
            if err > COMPLETENESS_TOL:
                raise ValueError(f"completeness violated: defect {err:g}")

    @property
    def dim(self):
        return self.outcomes[0][1].dim

    def completeness_defect(self):
        total = sum(op.m.conj().T @ op.m for _, op in self.outcomes)
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def labels(self):
        return [label for label, _ in self.outcomes]

    def operator(self, label):
        for lab, op in self.outcomes:
            if lab == label:
                return op
        raise KeyError(label)

    def povm_element(self, label):
        """Effect A^dag A for the given outcome."""
        op = self.operator(label)
        return Operator(op.m.conj().T @ op.m)


# ---------------------------------------------------------------------------
# fixed states and operators

def ket(*bits):
    """Computational basis state |b0 b1 ...>, qubit 0 most significant."""
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    v[idx] = 1.0
    return StateVector(v)


def qubit(alpha, beta, normalized=True):
    return StateVector(np.array([alpha, beta], dtype=np.complex128), normalized=normalized)


def equatorial(theta):
    """Equatorial Bloch state (|0> + e^{i theta} |1>)/sqrt(2)."""
    return qubit(1 / math.sqrt(2), np.exp(1j * theta) / math.sqrt(2))


KET_0 = ket(0)
KET_1 = ket(1)
PLUS_X = equatorial(0.0)
MINUS_X = equatorial(math.pi)
PLUS_Y = equatorial(math.pi / 2)
MINUS_Y = equatorial(-math.pi / 2)

SIGMA_X = Operator([[0, 1], [1, 0]])
SIGMA_Y = Operator([[0, -1j], [1j, 0]])
SIGMA_Z = Operator([[1, 0], [0, -1]])
IDENTITY_2 = Operator(np.eye(2))

PHI_PLUS = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2))
PHI_MINUS = StateVector(np.array([1, 0, 0, -1]) / math.sqrt(2))
PSI_PLUS = StateVector(np.array([0, 1, 1, 0]) / math.sqrt(2))
PSI_MINUS = StateVector(np.array([0, 1, -1, 0]) / math.sqrt(2))


def identity(dim):
    return Operator(np.eye(dim))


def orthogonal_qubit(psi):
    """The qubit orthogonal to |psi> (global phase arbitrary)."""
    a, b = psi.a
    return StateVector(np.array([-np.conj(b), np.conj(a)]))


# ---------------------------------------------------------------------------
# operations

def tensor(a, b):
    """Kronecker product of two states or two operators (left = slow index)."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        both_normalized = (
            abs(np.vdot(a.a, a.a).real - 1.0) < NORM_TOL
            and abs(np.vdot(b.a, b.a).real - 1.0) < NORM_TOL
        )
        return StateVector(np.kron(a.a, b.a), normalized=both_normalized)
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(np.kron(a.m, b.m))
    raise TypeError("tensor arguments must be two StateVectors or two Operators")


def tensor_pow(a, n):
    out = a
    for _ in range(n - 1):
        out = tensor(out, a)
    return out


def symmetric_basis(n):
    """Orthonormal Dicke basis of the symmetric subspace of n qubits.

    Returns n+1 StateVectors of dimension 2^n ordered by excitation number
    ascending.  The span contains |psi>^(x n) for every single-qubit state.
    """
    if not 1 <= n <= 8:
        raise ValueError("copies must be in 1..8")
    basis = []
    for k in range(n + 1):
        v = np.zeros(2**n, dtype=np.complex128)
        for idx in range(2**n):
            if bin(idx).count("1") == k:
                v[idx] = 1.0
        basis.append(StateVector(v / np.linalg.norm(v)))
    return basis


def symmetric_coordinates(psi, n):
    """Coordinates of |psi>^(x n) in the Dicke basis, without building 2^n vectors.

    For psi = (a, b): coordinate k is sqrt(C(n,k)) a^(n-k) b^k.
    """
    a, b = psi.a
    return np.array(
        [math.sqrt(math.comb(n, k)) * a ** (n - k) * b**k for k in range(n + 1)],
        dtype=np.complex128,
    )


def partial_trace(rho, keep, n_qubits=None):
    """Partial trace of a multi-qubit operator, keeping the listed qubits.

    Qubit 0 is the most significant index.  Trace and positivity are
    preserved for density operators.
    """
    if isinstance(rho, StateVector):
        rho = rho.outer()
    n = n_qubits if n_qubits is not None else Operator(rho.m).dim.bit_length() - 1
    if 2**n != rho.dim:
        raise ValueError("operator dimension is not a power of two")
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= n for k in keep):
        raise ValueError("invalid qubit index set")
    t = rho.m.reshape((2,) * (2 * n))
    idx = list(range(2 * n))
    for q in range(n):
        if q not in keep:
            idx[n + q] = idx[q]
    out_idx = [idx[q] for q in keep] + [idx[n + q] for q in keep]
    k = len(keep)
    return Operator(np.einsum(t, idx, out_idx).reshape(2**k, 2**k))


def eig_hermitian(a):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian operator.

    Cyclic Jacobi; raises on non-Hermitian input.
    """
    if isinstance(a, Operator):
        m = a.m
    else:
        m = np.asarray(a, dtype=np.complex128)
    if np.max(np.abs(m - m.conj().T)) > 1e-10 * max(1.0, float(np.max(np.abs(m)))):
        raise ValueError("matrix is not Hermitian")
    m = 0.5 * (m + m.conj().T)
    return jacobi_eigh(m)


def operator_sqrt_psd(a):
    """Square root of a positive semidefinite Hermitian operator."""
    w, v = eig_hermitian(a)
    if w[0] < -PSD_TOL:
        raise ValueError("operator is not positive semidefinite")
    return Operator((v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T)


def trace_norm(a):
    """Trace norm of a Hermitian operator: sum of absolute eigenvalues."""
    w, _ = eig_hermitian(a)
    return float(np.sum(np.abs(w)))


class MeasurementOutcome:
    """One branch of a measurement: label, probability and post-state.

    ``post_state`` is None for branches with probability below 1e-14
    (marked unreachable rather than divided by ~0).
    """

    __slots__ = ("label", "probability", "post_state")

    def __init__(self, label, probability, post_state):
        self.label = label
        self.probability = probability
        self.post_state = post_state

    def __repr__(self):
        return f"MeasurementOutcome({self.label!r}, p={self.probability:.6g})"


def apply_measurement(measurement, rho):
    """Apply a generalized measurement to a density operator.

    Returns the list of outcomes with p_i = tr(A_i rho A_i^dag) and
    post-states A_i rho A_i^dag / p_i.  Probabilities sum to one within
    1e-10 when the input is a valid density operator.
    """
    if isinstance(rho, StateVector):
        rho = rho.outer()
    defect = measurement.completeness_defect()
    if defect > COMPLETENESS_TOL:
        raise ValueError(f"completeness violated: defect {defect:g}")
    results = []
    for label, op in measurement.outcomes:
        t = op.m @ rho.m @ op.m.conj().T
        p = float(np.trace(t).real)
        if p > _UNREACHABLE_P:
            results.append(MeasurementOutcome(label, p, Operator(t / p)))
        else:
            results.append(MeasurementOutcome(label, max(p, 0.0), None))
    return results


def helstrom_error(rho0, rho1, prior0=0.5):
    """Minimum-error probability for discriminating two density operators.

    p_e = (1 - ||prior0 rho0 - (1-prior0) rho1||_tr) / 2.  For equiprobable
    pure states with overlap c this reduces to (1 - sqrt(1 - c^2)) / 2.
    """
    if not 0.0 <= prior0 <= 1.0:
        raise ValueError("prior must be in [0, 1]")
    if isinstance(rho0, StateVector):
        rho0 = rho0.outer()
    if isinstance(rho1, StateVector):
        rho1 = rho1.outer()
    gamma = Operator(prior0 * rho0.m - (1.0 - prior0) * rho1.m)
    return 0.5 * (1.0 - trace_norm(gamma))


def binary_information(p):
    """Binary mutual information 1 + p log2 p + (1-p) log2 (1-p), in bits.

    0 log 0 is taken as 0; p is an error probability in [0, 1].
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability out of range")
    out = 1.0
    for x in (p, 1.0 - p):
        if x > 0.0:
            out += x * math.log2(x)
    return out


def two_mode_number_state(n, phase, ratio):
    """n-photon state of two modes with intensity ratio t = ratio.

    Returns the coefficient vector over photon splits (n-m, m) for
    m = 0..n: sqrt(C(n,m) t^m / (1+t)^n) e^(i m phase).  With t = 1 this is
    the balanced two-mode (time-bin) case.  States with the same n and
    different phases have overlap ((1-t)/(1+t))^n.
    """
    if n < 0:
        raise ValueError("photon number must be non-negative")
    if ratio <= 0:
        raise ValueError("intensity ratio must be positive")
    logt = math.log(ratio)
    log1t = math.log1p(ratio)
    amps = np.empty(n + 1, dtype=np.complex128)
    for m in range(n + 1):
        lc = lgamma(n + 1) - lgamma(m + 1) - lgamma(n - m + 1)
        amps[m] = math.exp(0.5 * (lc + m * logt - n * log1t)) * np.exp(1j * m * phase)
    return StateVector(amps)


def two_mode_overlap(n, ratio):
    """Closed form |<phi_n(pi)|phi_n(0)>| = ((1-t)/(1+t))^n for t = ratio."""
    return ((1.0 - ratio) / (1.0 + ratio)) ** n
