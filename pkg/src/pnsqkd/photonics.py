"""Photon statistics of the source, channel attenuation, detection and QBER.

An attenuated laser pulse with no external phase reference behaves as a
Poisson mixture of photon-number states with mean mu.  The channel is
described by its attenuation in dB; detection by an efficiency and a
dark-count probability per gate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._kernels import poisson_click_sum

DEFAULT_ALPHA_DB_PER_KM = 0.25
TAIL_BOUND = 1e-12


@dataclass(frozen=True)
class SourceChannelModel:
    """Source and channel parameters.

    mu        mean photon number per pulse
    alpha     fiber attenuation in dB/km
    eta_det   detector efficiency
    p_d       dark-count probability per gate
    qber_opt  optical error fraction
    """

    mu: float
    alpha: float = DEFAULT_ALPHA_DB_PER_KM
    eta_det: float = 0.1
    p_d: float = 1e-5
    qber_opt: float = 0.01

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if not 0 < self.eta_det <= 1:
            raise ValueError("eta_det must be in (0, 1]")
        if not 0 <= self.p_d < 1:
            raise ValueError("p_d must be in [0, 1)")
        if not 0 <= self.qber_opt < 0.5:
            raise ValueError("qber_opt must be in [0, 0.5)")

    def distance_km(self, delta_db):
        return delta_db / self.alpha

    def attenuation_db(self, distance_km):
        return distance_km * self.alpha


def transmission(delta_db):
    """Channel transmission 10^(-delta/10)."""
    return 10.0 ** (-delta_db / 10.0)


def poisson_pmf(n, mu):
    """Poisson probability e^(-mu) mu^n / n!, computed in log space."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if mu < 0:
        raise ValueError("mu must be non-negative")
    if mu == 0.0:
        return 1.0 if n == 0 else 0.0
    return math.exp(-mu + n * math.log(mu) - math.lgamma(n + 1))


def poisson_cutoff(mu):
    """Truncation index N with sum_{n>N} p(n, mu) < 1e-12."""
    return int(math.ceil(mu + 12.0 * math.sqrt(mu) + 30.0))


def poisson_distribution(mu):
    """Truncated Poisson pmf as a list indexed by photon number."""
    return [poisson_pmf(n, mu) for n in range(poisson_cutoff(mu) + 1)]


def bob_raw_rate(model, delta_db):
    """Expected raw rate at the receiver, photons per pulse: mu 10^(-delta/10)."""
    if delta_db < 0:
        raise ValueError("attenuation must be non-negative")
    return model.mu * transmission(delta_db)


def detection_probability(model, photon_distribution, offset=0):
    """Click probability sum_{n > offset} p(n) (1 - (1 - eta_det)^(n - offset)).

    ``photon_distribution`` is a per-photon-number probability sequence;
    ``offset`` is the number of photons removed from each pulse before it
    reaches the detector.
    """
    if offset < 0:
        raise ValueError("offset must be non-negative")
    eta = model.eta_det
    loss = 1.0 - eta
    total = 0.0
    for n, p in enumerate(photon_distribution):
        if n > offset:
            total += p * (1.0 - loss ** (n - offset))
    return total


def expected_click_rate(model, mu_at_detector, offset=0):
    """Same sum as ``detection_probability`` over a full Poisson distribution.

    Uses the kernel loop; for offset = 0 this equals 1 - exp(-eta mu)
    exactly, which the tests use as an independent check.
    """
    return poisson_click_sum(mu_at_detector, model.eta_det, offset, poisson_cutoff(mu_at_detector))


def qber_total(model, delta_db, clamp=True):
    """Total QBER: dark-count term plus the optical error.

    (p_d / 2) / (p_d + mu eta_det 10^(-delta/10)) + qber_opt, clamped to
    [0, 0.5] by default (information is symmetric beyond one half).
    """
    if delta_db < 0:
        raise ValueError("attenuation must be non-negative")
    signal = model.mu * model.eta_det * transmission(delta_db)
    q = (model.p_d / 2.0) / (model.p_d + signal) + model.qber_opt
    return min(q, 0.5) if clamp else q
