"""Truncated Fock-space states and density matrices for one and two bosonic modes.

Two-mode arrays are dense and indexed ``(n_A, n_B)``; two-mode density
matrices are stored as rank-4 tensors ``rho[m_A, m_B, n_A, n_B]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TRUNC_TOL = 1e-8
HERM_TOL = 1e-10
PSD_TOL = 1e-8


class CutoffError(ValueError):
    """Raised when a Fock cutoff cannot hold a state to within ``TRUNC_TOL``."""


def check_cutoff(n_max: int) -> int:
    if int(n_max) != n_max or n_max < 1:
        raise ValueError(f"cutoff n_max must be an integer >= 1, got {n_max!r}")
    return int(n_max)


def default_cutoff(alpha_mag: float = 0.0, extra: int = 0) -> int:
    """Adaptive cutoff ``ceil(|a|^2 + 6|a| + 10)`` (at least 16), plus ``extra`` photons."""
    a = abs(alpha_mag)
    return max(16, math.ceil(a * a + 6 * a + 10)) + int(extra)


def _frozen(arr, ndim: int, name: str) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    if out.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {out.shape}")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SingleModeState:
    """Pure single-mode state; ``amp[n]`` is the amplitude of ``|n>``."""

    amp: np.ndarray

    def __post_init__(self):
        amp = _frozen(self.amp, 1, "amp")
        if amp.size < 2:
            raise ValueError("a single-mode state needs n_max >= 1")
        norm = float(np.vdot(amp, amp).real)
        if abs(norm - 1.0) > TRUNC_TOL:
            raise ValueError(f"state norm^2 = {norm!r} deviates from 1 by more than {TRUNC_TOL}")
        object.__setattr__(self, "amp", amp)

    @property
    def n_max(self) -> int:
        return self.amp.size - 1

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure two-mode state; ``amp[m, n]`` is the amplitude of ``|m>_A |n>_B``."""

    amp: np.ndarray

    def __post_init__(self):
        amp = _frozen(self.amp, 2, "amp")
        norm = float(np.vdot(amp, amp).real)
        if abs(norm - 1.0) > TRUNC_TOL:
            raise ValueError(f"state norm^2 = {norm!r} deviates from 1 by more than {TRUNC_TOL}")
        object.__setattr__(self, "amp", amp)

    @property
    def dims(self) -> tuple[int, int]:
        return self.amp.shape

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)

    def probability(self, n_a: int, n_b: int) -> float:
        return float(abs(self.amp[n_a, n_b]) ** 2)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace operator on a truncated single-mode space."""

    elements: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.elements, 2, "elements")
        if rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got {rho.shape}")
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > HERM_TOL:
            raise ValueError(f"density matrix is not Hermitian (max deviation {herm:.3e})")
        tr = float(np.trace(rho).real)
        if abs(tr - 1.0) > TRUNC_TOL:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1 by more than {TRUNC_TOL}")
        object.__setattr__(self, "elements", rho)

    @property
    def n_max(self) -> int:
        return self.elements.shape[0] - 1

    @property
    def trace(self) -> float:
        return float(np.trace(self.elements).real)

    def populations(self) -> np.ndarray:
        """Photon-number distribution ``rho[n, n]``."""
        return np.diag(self.elements).real.copy()

    def is_psd(self, tol: float = PSD_TOL) -> bool:
        return bool(np.linalg.eigvalsh(self.elements)[0] >= -tol)


@dataclass(frozen=True, eq=False)
class TwoModeDensityMatrix:
    """Two-mode density operator as a tensor ``rho[m_A, m_B, n_A, n_B]``."""

    elements: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.elements, 4, "elements")
        if rho.shape[:2] != rho.shape[2:]:
            raise ValueError(f"two-mode density tensor must be square, got {rho.shape}")
        mat = rho.reshape(rho.shape[0] * rho.shape[1], -1)
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > HERM_TOL:
            raise ValueError(f"density matrix is not Hermitian (max deviation {herm:.3e})")
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRUNC_TOL:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1 by more than {TRUNC_TOL}")
        object.__setattr__(self, "elements", rho)

    @property
    def dims(self) -> tuple[int, int]:
        return self.elements.shape[:2]

    def as_matrix(self) -> np.ndarray:
        """Row-major ``(n_A, n_B)`` flattening into a square matrix."""
        d = self.dims[0] * self.dims[1]
        return self.elements.reshape(d, d)

    @property
    def trace(self) -> float:
        return float(np.trace(self.as_matrix()).real)


def basis_state(n: int, n_max: int) -> SingleModeState:
    n_max = check_cutoff(n_max)
    if not 0 <= n <= n_max:
        raise CutoffError(f"Fock state |{n}> does not fit below cutoff n_max={n_max}")
    amp = np.zeros(n_max + 1, dtype=complex)
    amp[n] = 1.0
    return SingleModeState(amp)


def tensor(a: SingleModeState, b: SingleModeState) -> TwoModeState:
    if a.n_max != b.n_max:
        raise ValueError(f"cutoff mismatch: {a.n_max} != {b.n_max}")
    return TwoModeState(np.outer(a.amp, b.amp))


def density_from_state(psi):
    """Projector ``|psi><psi|`` for a single- or two-mode pure state."""
    if isinstance(psi, SingleModeState):
        return DensityMatrix(np.outer(psi.amp, psi.amp.conj()))
    if isinstance(psi, TwoModeState):
        return TwoModeDensityMatrix(np.einsum("ab,cd->abcd", psi.amp, psi.amp.conj()))
    raise TypeError(f"expected SingleModeState or TwoModeState, got {type(psi).__name__}")


def partial_trace(rho2: TwoModeDensityMatrix, keep: int) -> DensityMatrix:
    """Reduced state of mode ``keep`` (0 = mode A, 1 = mode B)."""
    if keep == 0:
        return DensityMatrix(np.einsum("ambm->ab", rho2.elements))
    if keep == 1:
        return DensityMatrix(np.einsum("mamb->ab", rho2.elements))
    raise ValueError(f"mode index must be 0 or 1, got {keep!r}")


def reduce_pure(psi: TwoModeState, keep: int) -> DensityMatrix:
    """Same result as ``partial_trace(density_from_state(psi), keep)`` without the rank-4 tensor."""
    a = psi.amp
    if keep == 0:
        return DensityMatrix(a @ a.conj().T)
    if keep == 1:
        return DensityMatrix(a.T @ a.conj())
    raise ValueError(f"mode index must be 0 or 1, got {keep!r}")


def purity(rho: DensityMatrix) -> float:
    r = rho.elements
    # Tr(rho^2) = sum |rho_mn|^2 for Hermitian rho
    return float(np.sum(np.abs(r) ** 2))
