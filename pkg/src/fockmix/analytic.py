"""Closed-form output states and photon statistics.

Everything here depends on the device only through its composed
coefficients ``t`` and ``r`` (moduli are shared with ``t'``, ``r'`` by
reciprocity), so any valid four-port works: a bare splitter, an MZI or a
cascade.  Input convention: single photon on port 0, coherent state on
port 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import DensityMatrix, TwoModeState, default_cutoff
from .scattering import ScatteringMatrix, bs_dielectric, mzi
from .simulator import PhotonStats, displacement_operator, port_index


@dataclass(frozen=True)
class MixtureOutput:
    """``w_c |b><b| + w_f D(b)|1><1|D(b)^dag`` with ``b = displacement``."""

    weight_coherent: float
    weight_displaced_fock: float
    displacement: complex

    def __post_init__(self):
        total = self.weight_coherent + self.weight_displaced_fock
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {total!r}")


def output_mixture(s: ScatteringMatrix, alpha: complex, port) -> MixtureOutput:
    t2, r2 = abs(s.t) ** 2, abs(s.r) ** 2
    if abs(t2 - abs(s.t_prime) ** 2) > 1e-12 or abs(r2 - abs(s.r_prime) ** 2) > 1e-12:
        raise ValueError(f"|t|, |t'| or |r|, |r'| disagree for {s!r}")
    if port_index(port) == 1:
        return MixtureOutput(t2, r2, s.t * alpha)
    return MixtureOutput(r2, t2, s.r * alpha)


def mixture_to_density(m: MixtureOutput, n_max: int | None = None) -> DensityMatrix:
    if n_max is None:
        n_max = default_cutoff(abs(m.displacement), extra=1)
    d = displacement_operator(m.displacement, n_max)
    coh, fock1 = d[:, 0], d[:, 1]
    rho = (m.weight_coherent * np.outer(coh, coh.conj())
           + m.weight_displaced_fock * np.outer(fock1, fock1.conj()))
    return DensityMatrix(rho)


def mean_photon_analytic(s: ScatteringMatrix, alpha: complex, port) -> PhotonStats:
    t2, r2, a2 = abs(s.t) ** 2, abs(s.r) ** 2, abs(alpha) ** 2
    if port_index(port) == 1:
        return PhotonStats(r2 + t2 * a2, t2 * a2 * (1 + 2 * r2) + r2 * t2)
    return PhotonStats(t2 + r2 * a2, r2 * a2 * (1 + 2 * t2) + r2 * t2)


def balanced_mzi_stats(theta: float, alpha_mag: float) -> tuple[PhotonStats, PhotonStats]:
    """(upper, lower) statistics behind an MZI of two 50:50 dielectric splitters."""
    a2 = alpha_mag ** 2
    c2, s2 = math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2
    sin2 = math.sin(theta) ** 2
    msd_upper = 0.25 * sin2 + a2 * (c2 + 0.5 * sin2)
    upper = PhotonStats(s2 + a2 * c2, msd_upper)
    lower = PhotonStats(c2 + a2 * s2, msd_upper - a2 * math.cos(theta))
    return upper, lower


def balanced_mzi(theta: float) -> ScatteringMatrix:
    bs = bs_dielectric(1 / math.sqrt(2))
    return mzi(bs, theta, bs)


@dataclass(frozen=True)
class TwoPhotonOutput:
    """One photon on each input; amplitudes of ``|2,0>``, ``|1,1>``, ``|0,2>`` (upper, lower)."""

    c20: complex
    c11: complex
    c02: complex

    @property
    def w_coincidence(self) -> float:
        return abs(self.c11) ** 2

    @property
    def w_20(self) -> float:
        return abs(self.c20) ** 2

    @property
    def w_02(self) -> float:
        return abs(self.c02) ** 2

    @property
    def mean_upper(self) -> float:
        return 2 * self.w_20 + self.w_coincidence

    @property
    def mean_lower(self) -> float:
        return 2 * self.w_02 + self.w_coincidence

    def state(self, n_max: int = 2) -> TwoModeState:
        amp = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        amp[2, 0], amp[1, 1], amp[0, 2] = self.c20, self.c11, self.c02
        return TwoModeState(amp)


def two_photon_output(s: ScatteringMatrix) -> TwoPhotonOutput:
    """``|1,1>`` through an arbitrary four-port."""
    sq2 = math.sqrt(2)
    return TwoPhotonOutput(sq2 * s.t_prime * s.r, s.t_prime * s.t + s.r_prime * s.r, sq2 * s.r_prime * s.t)


def hom_mzi_output(theta: float) -> TwoPhotonOutput:
    """``|1,1>`` through the balanced dielectric MZI, in closed form.

    Coincidences occur with probability ``cos^2(theta)``, each bunched
    outcome with ``sin^2(theta)/2``.
    """
    e = np.exp(2j * theta)
    bunched = 1j * (1 - e) / (2 * math.sqrt(2))
    return TwoPhotonOutput(bunched, -(1 + e) / 2, -bunched)
