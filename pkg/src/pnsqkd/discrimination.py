"""State-set geometry, filters and unambiguous discrimination.

Covers the two-state (B92-style) POVM and its filter decomposition, the
overlap penalty that any set-orthogonalizing operation inflicts on the
conjugate set, linear independence of N-1 copies of N qubit states, and
the multicopy unambiguous-discrimination POVM on the symmetric subspace
together with its optimal success probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmath
from .qmath import (
    GeneralizedMeasurement,
    Operator,
    eig_hermitian,
    operator_sqrt_psd,
    orthogonal_qubit,
    symmetric_coordinates,
)

DISTINCT_TOL = 1e-12


@dataclass
class StateSet:
    """A labeled set of qubit signal states."""

    states: list
    labels: list
    eta: float | None = None

    def __post_init__(self):
        if len(self.states) != len(self.labels):
            raise ValueError("states and labels must have equal length")

    def overlap(self, i, j):
        return abs(self.states[i].overlap(self.states[j]))


def b92_pair(eta):
    """The two nonorthogonal signal states with overlap cos(eta).

    psi_0 = (cos eta/2, sin eta/2), psi_1 = (cos eta/2, -sin eta/2).
    """
    if not 0 < eta <= math.pi / 2:
        raise ValueError("eta must be in (0, pi/2]")
    c, s = math.cos(eta / 2), math.sin(eta / 2)
    return StateSet([qmath.qubit(c, s), qmath.qubit(c, -s)], [0, 1], eta)


def fourtwo_sets(eta):
    """Four states on one parallel of the Bloch sphere, grouped in two sets.

    Set a sits at azimuth 0 and pi, set b at +-pi/2; within each set the
    overlap is cos(eta).
    """
    a = b92_pair(eta).states
    c, s = math.cos(eta / 2), math.sin(eta / 2)
    b = [qmath.qubit(c, 1j * s), qmath.qubit(c, -1j * s)]
    return StateSet(a, [0, 1], eta), StateSet(b, [0, 1], eta)


def reflected_sets(eta):
    """Two two-state sets, the second reflected through the equatorial plane.

    This is the configuration for which no operation can orthogonalize both
    sets at once; see ``filtered_overlap_bound``.
    """
    a = b92_pair(eta).states
    c, s = math.cos(eta / 2), math.sin(eta / 2)
    b = [qmath.qubit(s, -c), qmath.qubit(s, c)]
    return StateSet(a, [0, 1], eta), StateSet(b, [0, 1], eta)


def equatorial_phase_states(n_bases):
    """The 2 n_b equatorial states |k> = (|0> + e^(i k pi / n_b) |1>)/sqrt(2)."""
    return [qmath.equatorial(k * math.pi / n_bases) for k in range(2 * n_bases)]


def b92_povm(eta):
    """Unambiguous discrimination of the two-state set: outcomes {0, 1, ?}.

    Measurement operators are Hermitian roots of the effects
    Pi_0 = |psi_1^perp><psi_1^perp| / (1 + cos eta), Pi_1 symmetric,
    Pi_? the remainder.  The inconclusive probability on either signal
    state is cos(eta) and misidentification is impossible.
    """
    if not 0 < eta <= math.pi / 2:
        raise ValueError("eta must be in (0, pi/2]")
    pair = b92_pair(eta)
    scale = 1.0 / (1.0 + math.cos(eta))
    perp1 = orthogonal_qubit(pair.states[1])
    perp0 = orthogonal_qubit(pair.states[0])
    pi0 = scale * perp1.outer().m
    pi1 = scale * perp0.outer().m
    pi_inc = np.eye(2) - pi0 - pi1
    return GeneralizedMeasurement([
        ("0", operator_sqrt_psd(Operator(pi0))),
        ("1", operator_sqrt_psd(Operator(pi1))),
        ("?", operator_sqrt_psd(Operator(pi_inc))),
    ])


def b92_filter(eta):
    """Two-outcome filter mapping the two-state set onto the x basis.

    A_ok = (|+x><psi_1^perp| + |-x><psi_0^perp|) / sqrt(1 + cos eta);
    it succeeds on either signal state with probability 1 - cos(eta) and
    sends psi_0 -> |+x>, psi_1 -> |-x>.  Composed with a projective x-basis
    measurement it reproduces the three-outcome POVM statistics.
    """
    if not 0 < eta < math.pi / 2:
        raise ValueError("eta must be in (0, pi/2)")
    c, s = math.cos(eta / 2), math.sin(eta / 2)
    # perpendicular states phased so both cross-overlaps are +sin(eta); the
    # relative branch phase is what sends the conjugate set onto the y basis
    perp1 = qmath.qubit(s, c)
    perp0 = qmath.qubit(s, -c)
    a_ok = (np.outer(qmath.PLUS_X.a, perp1.a.conj())
            + np.outer(qmath.MINUS_X.a, perp0.a.conj())) / math.sqrt(1.0 + math.cos(eta))
    remainder = np.eye(2) - a_ok.conj().T @ a_ok
    return GeneralizedMeasurement([
        ("ok", Operator(a_ok)),
        ("?", operator_sqrt_psd(Operator(remainder))),
    ])


def filtered_overlap_bound(eta):
    """Overlap of the reflected set after the set-a orthogonalizing filter.

    Returns (new_overlap, pass_probability) for the maximal filter: the
    reflected pair ends with overlap 2 cos(eta) / (1 + cos^2(eta)), which
    is never below the original cos(eta), and passes the filter with
    probability (1 + cos^2(eta)) / (1 + cos(eta)).
    """
    if not 0 < eta < math.pi / 2:
        raise ValueError("eta must be in (0, pi/2)")
    c = math.cos(eta)
    new_overlap = 2.0 * c / (1.0 + c * c)
    p_b = (1.0 + c * c) / (1.0 + c)
    if new_overlap < c - 1e-15:
        raise AssertionError("overlap bound violated")
    return new_overlap, p_b


def linear_independence_check(states, copies=None):
    """Linear independence of |psi_i>^(x copies) for N distinct qubit states.

    With copies = N-1 the product states live in the N-dimensional symmetric
    subspace; the check forms their coordinate matrix in the Dicke basis and
    tests |det| > 1e-10 (columns have unit norm).  Returns (independent,
    |det|).  Raises if two input states coincide up to phase.
    """
    n = len(states)
    if copies is None:
        copies = n - 1
    if copies != n - 1:
        raise ValueError("copies must equal N - 1")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(states[i].overlap(states[j])) >= 1.0 - DISTINCT_TOL:
                raise ValueError(f"states {i} and {j} are not distinct")
    cols = np.column_stack([symmetric_coordinates(s, copies) for s in states])
    det = abs(np.linalg.det(cols))
    return det > 1e-10, det


def _reciprocal_states(states, copies):
    """Dual vectors |phi_i> in the symmetric subspace with <phi_i|psi_j^(c)> = delta_ij."""
    cols = np.column_stack([symmetric_coordinates(s, copies) for s in states])
    ok, _ = linear_independence_check(states, copies)
    if not ok:
        raise ValueError("product states are numerically dependent")
    # rows of inv(cols) are the duals' bras
    inv = np.linalg.inv(cols)
    return [inv[i, :].conj() for i in range(len(states))]


def usd_conclusive_bound_operator(states, copies):
    """Sum of dual-state projectors whose top eigenvalue bounds the USD success.

    The equal-conclusive-probability POVM Pi_i = p |phi_i><phi_i| stays
    positive up to p = 1 / lambda_max(sum_i |phi_i><phi_i|).
    """
    duals = _reciprocal_states(states, copies)
    dim = copies + 1
    k = np.zeros((dim, dim), dtype=np.complex128)
    for d in duals:
        k += np.outer(d, d.conj())
    return Operator(k)


def usd_multicopy_povm(states, copies):
    """Unambiguous discrimination POVM for N states given N-1 copies.

    Operators act on the symmetric subspace in Dicke coordinates
    (dimension copies + 1).  Conclusive elements are built on the dual
    states with a common conclusive probability, maximized subject to the
    inconclusive element staying positive; cross-identification is exactly
    zero by construction.
    """
    n = len(states)
    if copies < n - 1:
        raise ValueError("need at least N - 1 copies for unambiguous discrimination")
    if copies != n - 1:
        raise ValueError("only the minimal copies = N - 1 construction is supported")
    duals = _reciprocal_states(states, copies)
    bound = usd_conclusive_bound_operator(states, copies)
    w, _ = eig_hermitian(bound)
    p_ok = 1.0 / float(w[-1])
    dim = copies + 1
    outcomes = []
    pi_sum = np.zeros((dim, dim), dtype=np.complex128)
    for i, d in enumerate(duals):
        pi = p_ok * np.outer(d, d.conj())
        pi_sum += pi
        outcomes.append((str(i), operator_sqrt_psd(Operator(pi))))
    pi_inc = np.eye(dim) - pi_sum
    outcomes.append(("?", operator_sqrt_psd(Operator(pi_inc))))
    return GeneralizedMeasurement(outcomes)


def usd_optimal_pok(n_bases):
    """Optimal unambiguous-discrimination success probability for 2 n_b
    equatorial states given 2 n_b - 1 copies.

    Computed as the reciprocal of the top eigenvalue of the dual-projector
    sum.  Matches n_b / 4^(n_b - 1) to better than 1e-9 for n_b up to 8.
    """
    if not 1 <= n_bases <= 8:
        raise ValueError("n_bases must be in 1..8")
    states = equatorial_phase_states(n_bases)
    copies = 2 * n_bases - 1
    bound = usd_conclusive_bound_operator(states, copies)
    w, _ = eig_hermitian(bound)
    return 1.0 / float(w[-1])


def usd_pok_conjectured(n_bases):
    """Closed form n_b / 4^(n_b - 1) that the numerical values reproduce."""
    return n_bases / 4.0 ** (n_bases - 1)
