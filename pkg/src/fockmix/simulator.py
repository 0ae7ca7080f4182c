"""Brute-force four-port simulation in a truncated two-mode Fock space.

Inputs enter on port 0 (mode A) and port 1 (mode B).  After the device,
mode A is the upper output (port 2, or 4 behind an MZI) and mode B the
lower output (port 3, or 5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.linalg import expm, logm

from .fock import (
    TRUNC_TOL,
    CutoffError,
    DensityMatrix,
    SingleModeState,
    TwoModeState,
    check_cutoff,
    default_cutoff,
    reduce_pure,
    tensor,
)
from .scattering import ScatteringMatrix


@dataclass(frozen=True)
class Fock:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Fock photon number must be a non-negative integer, got {self.n!r}")


@dataclass(frozen=True)
class Coherent:
    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))


@dataclass(frozen=True)
class General:
    """Superposition ``sum_m coeffs[m] |m>``."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        norm = sum(abs(x) ** 2 for x in c)
        if not c or abs(norm - 1.0) > 1e-12:
            raise ValueError(f"general-state coefficients must be normalized, got norm^2 = {norm!r}")
        object.__setattr__(self, "coeffs", c)


InputSpec = Union[Fock, Coherent, General]
VACUUM = Fock(0)


@dataclass(frozen=True)
class PhotonStats:
    mean: float
    msd: float

    def __post_init__(self):
        if self.mean < -TRUNC_TOL or self.msd < -TRUNC_TOL:
            raise ValueError(f"photon statistics must be non-negative, got {self}")


_PORTS = {"upper": 0, "lower": 1, 2: 0, 4: 0, 3: 1, 5: 1}


def port_index(port) -> int:
    """Map ``"upper"``/``"lower"`` (or port numbers 2-5) to the output mode index."""
    try:
        return _PORTS[port]
    except (KeyError, TypeError):
        raise ValueError(f"unknown output port {port!r}; use 'upper' or 'lower'") from None


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    """``exp(-|a|^2/2) a^n / sqrt(n!)`` for ``n = 0..n_max`` via a running product."""
    amp = np.empty(n_max + 1, dtype=complex)
    amp[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, n_max + 1):
        amp[n] = amp[n - 1] * alpha / math.sqrt(n)
    return amp


def photon_support(spec: InputSpec) -> int:
    """Highest occupied Fock level of a non-coherent input (0 for coherent)."""
    if isinstance(spec, Fock):
        return spec.n
    if isinstance(spec, General):
        nz = [m for m, c in enumerate(spec.coeffs) if c != 0]
        return nz[-1] if nz else 0
    return 0


def auto_cutoff(*specs: InputSpec) -> int:
    alpha = max((abs(s.alpha) for s in specs if isinstance(s, Coherent)), default=0.0)
    return default_cutoff(alpha, extra=sum(photon_support(s) for s in specs))


def prepare(spec: InputSpec, n_max: int) -> SingleModeState:
    n_max = check_cutoff(n_max)
    if isinstance(spec, Fock):
        if spec.n > n_max:
            raise CutoffError(f"Fock state |{spec.n}> exceeds cutoff n_max={n_max}")
        amp = np.zeros(n_max + 1, dtype=complex)
        amp[spec.n] = 1.0
        return SingleModeState(amp)
    if isinstance(spec, Coherent):
        amp = coherent_amplitudes(spec.alpha, n_max)
        tail = 1.0 - float(np.vdot(amp, amp).real)
        if tail > TRUNC_TOL:
            raise CutoffError(
                f"coherent state |{spec.alpha}> loses {tail:.3e} probability above n_max={n_max}; "
                f"use n_max >= {default_cutoff(abs(spec.alpha))}"
            )
        return SingleModeState(amp)
    if isinstance(spec, General):
        if photon_support(spec) > n_max:
            raise CutoffError(f"general state has support up to |{photon_support(spec)}>, above n_max={n_max}")
        amp = np.zeros(n_max + 1, dtype=complex)
        c = spec.coeffs[: n_max + 1]
        amp[: len(c)] = c
        return SingleModeState(amp)
    raise TypeError(f"unsupported input spec {spec!r}")


def displacement_operator(alpha: complex, n_max: int) -> np.ndarray:
    """Exact matrix elements ``<m|D(alpha)|n>`` for ``m, n <= n_max``.

    For ``k = m - n >= 0`` the element is
    ``sqrt(n!/m!) alpha^k exp(-|alpha|^2/2) L_n^(k)(|alpha|^2)``.  The Laguerre
    three-term recurrence is run on these normalized elements directly, one
    step in ``n`` for all diagonals ``k`` at once, so nothing overflows even
    for ``|alpha| ~ 10``.  The upper triangle follows from
    ``<n|D|n+k> = (-1)^k conj(<n+k|D|n>)``.
    """
    n_max = check_cutoff(n_max)
    dim = n_max + 1
    x = abs(alpha) ** 2
    k = np.arange(dim)
    # e[k, n] = <n+k|D|n>, valid for n + k <= n_max
    e = np.zeros((dim, dim), dtype=complex)
    e[:, 0] = coherent_amplitudes(alpha, n_max)
    e[:-1, 1] = (1 + k[:-1] - x) * e[:-1, 0] / np.sqrt(k[:-1] + 1.0)
    for n in range(1, n_max):
        kk = k[: dim - n - 1]
        e[kk, n + 1] = ((2 * n + 1 + kk - x) * e[kk, n]
                        - np.sqrt(n * (n + kk)) * e[kk, n - 1]) / np.sqrt((n + 1) * (n + kk + 1.0))
    d = np.zeros((dim, dim), dtype=complex)
    sign = (-1.0) ** k
    for kk in range(dim):
        n = np.arange(dim - kk)
        d[n + kk, n] = e[kk, : dim - kk]
        if kk:
            d[n, n + kk] = sign[kk] * np.conj(e[kk, : dim - kk])
    return d


def displace(rho: DensityMatrix, alpha: complex) -> DensityMatrix:
    """``D(alpha) rho D(alpha)^dag`` on the same cutoff."""
    d = displacement_operator(alpha, rho.n_max)
    return DensityMatrix(d @ rho.elements @ d.conj().T)


def _block_indices(big_n: int, n_max: int) -> np.ndarray:
    """Mode-A occupations ``k`` of the basis states ``|k, N-k>`` inside the cutoff."""
    return np.arange(max(0, big_n - n_max), min(big_n, n_max) + 1)


def _generator_block(g: np.ndarray, big_n: int, ks: np.ndarray) -> np.ndarray:
    """``sum_jk g[j,k] a_j^dag a_k`` restricted to total photon number ``big_n``."""
    size = ks.size
    block = np.zeros((size, size), dtype=complex)
    block[np.arange(size), np.arange(size)] = g[0, 0] * ks + g[1, 1] * (big_n - ks)
    # a_A^dag a_B: |k, N-k> -> sqrt((k+1)(N-k)) |k+1, N-k-1>
    for i in range(size - 1):
        k = ks[i]
        block[i + 1, i] = g[0, 1] * math.sqrt((k + 1) * (big_n - k))
        block[i, i + 1] = g[1, 0] * math.sqrt((k + 1) * (big_n - k))
    return block


def lift_blocks(s: ScatteringMatrix, n_max: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per total-photon-number blocks ``(k_values, U_N)`` of the lifted unitary."""
    n_max = check_cutoff(n_max)
    g = logm(s.matrix)
    blocks = []
    for big_n in range(2 * n_max + 1):
        ks = _block_indices(big_n, n_max)
        blocks.append((ks, expm(_generator_block(g, big_n, ks))))
    return blocks


def lift(s: ScatteringMatrix, n_max: int) -> np.ndarray:
    """Two-mode Fock-space unitary of ``s`` on the ``(n_max+1)^2`` space.

    Rows and columns use the flattened index ``n_A * (n_max + 1) + n_B``.
    Blocks with total photon number above ``n_max`` are clipped by the cutoff
    and only approximate the physical transformation.
    """
    dim = n_max + 1
    u = np.zeros((dim * dim, dim * dim), dtype=complex)
    for big_n, (ks, block) in enumerate(lift_blocks(s, n_max)):
        idx = ks * dim + (big_n - ks)
        u[np.ix_(idx, idx)] = block
    return u


def apply_lift(blocks, amp: np.ndarray) -> np.ndarray:
    out = np.zeros_like(amp, dtype=complex)
    for big_n, (ks, block) in enumerate(blocks):
        out[ks, big_n - ks] = block @ amp[ks, big_n - ks]
    return out


def simulate_fourport(s: ScatteringMatrix, in0: InputSpec, in1: InputSpec,
                      n_max: int | None = None) -> TwoModeState:
    if n_max is None:
        n_max = auto_cutoff(in0, in1)
    psi_in = tensor(prepare(in0, n_max), prepare(in1, n_max))
    out = apply_lift(lift_blocks(s, n_max), psi_in.amp)
    return TwoModeState(out)


def reduced_output(s: ScatteringMatrix, in0: InputSpec, in1: InputSpec, port,
                   n_max: int | None = None) -> DensityMatrix:
    """Reduced density matrix of one output port; the other port is traced out."""
    return reduce_pure(simulate_fourport(s, in0, in1, n_max), port_index(port))


def photon_stats(rho: DensityMatrix) -> PhotonStats:
    p = rho.populations()
    n = np.arange(p.size)
    mean = float(n @ p)
    msd = float((n * n) @ p) - mean * mean
    return PhotonStats(mean, max(msd, 0.0))
