"""Single-mode Wigner functions on rectangular (q, p) grids.

Units: hbar = omega = 1, so q0 = 1 and a displacement ``beta`` moves the
state to ``(sqrt(2) Re beta, sqrt(2) Im beta)``.  Values are the raw
Wigner function (multiply by pi for the usual "x pi" plots).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .analytic import MixtureOutput, output_mixture
from .fock import DensityMatrix
from .scattering import ScatteringMatrix

DEFAULT_HALF_WIDTH = 8.0
DEFAULT_POINTS = 201
GRID_TOL = 1e-4
TAIL_WARN = 1e-8


class CutoffWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GridSpec:
    """``nq x np`` cells covering ``[q_min, q_max] x [p_min, p_max]``; samples sit at cell centers."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    nq: int = DEFAULT_POINTS
    np: int = DEFAULT_POINTS

    def __post_init__(self):
        if not (self.q_min < self.q_max and self.p_min < self.p_max):
            raise ValueError(f"empty grid extent: {self}")
        if self.nq < 2 or self.np < 2:
            raise ValueError(f"grid needs at least 2 samples per axis: {self}")

    @classmethod
    def centered(cls, q0: float = 0.0, p0: float = 0.0, half_width: float = DEFAULT_HALF_WIDTH,
                 points: int = DEFAULT_POINTS) -> "GridSpec":
        """Square grid around ``(q0, p0)``; with odd ``points`` the middle cell sits on it."""
        return cls(q0 - half_width, q0 + half_width, p0 - half_width, p0 + half_width, points, points)

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / self.nq

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / self.np

    @property
    def q(self) -> np.ndarray:
        return self.q_min + (np.arange(self.nq) + 0.5) * self.dq

    @property
    def p(self) -> np.ndarray:
        return self.p_min + (np.arange(self.np) + 0.5) * self.dp

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.q, self.p, indexing="ij")


DEFAULT_GRID = GridSpec.centered()


def phase_space_center(beta: complex) -> tuple[float, float]:
    return math.sqrt(2) * beta.real, math.sqrt(2) * beta.imag


@dataclass(frozen=True, eq=False)
class WignerField:
    grid: GridSpec
    values: np.ndarray  # shape (nq, np), q-major

    def integral(self) -> float:
        return float(self.values.sum() * self.grid.dq * self.grid.dp)

    def argmin(self) -> tuple[float, float]:
        i, j = np.unravel_index(np.argmin(self.values), self.values.shape)
        return float(self.grid.q[i]), float(self.grid.p[j])

    def argmax(self) -> tuple[float, float]:
        i, j = np.unravel_index(np.argmax(self.values), self.values.shape)
        return float(self.grid.q[i]), float(self.grid.p[j])

    def nearest(self, q: float, p: float) -> float:
        i = int(np.clip(np.floor((q - self.grid.q_min) / self.grid.dq), 0, self.grid.nq - 1))
        j = int(np.clip(np.floor((p - self.grid.p_min) / self.grid.dp), 0, self.grid.np - 1))
        return float(self.values[i, j])

    def center_value(self) -> float:
        return float(self.values[self.grid.nq // 2, self.grid.np // 2])

    def __add__(self, other: "WignerField") -> "WignerField":
        if other.grid != self.grid:
            raise ValueError("cannot add Wigner fields on different grids")
        return WignerField(self.grid, self.values + other.values)

    def __mul__(self, w: float) -> "WignerField":
        return WignerField(self.grid, w * self.values)

    __rmul__ = __mul__


def _shifted_r2(beta: complex, grid: GridSpec) -> np.ndarray:
    q, p = grid.mesh()
    q0, p0 = phase_space_center(complex(beta))
    return (q - q0) ** 2 + (p - p0) ** 2


def wigner_coherent(beta: complex, grid: GridSpec = DEFAULT_GRID) -> WignerField:
    r2 = _shifted_r2(beta, grid)
    return WignerField(grid, np.exp(-r2) / np.pi)


def wigner_displaced_fock1(beta: complex, grid: GridSpec = DEFAULT_GRID) -> WignerField:
    r2 = _shifted_r2(beta, grid)
    return WignerField(grid, -np.exp(-r2) * (1 - 2 * r2) / np.pi)


def wigner_from_mixture(m: MixtureOutput, grid: GridSpec = DEFAULT_GRID) -> WignerField:
    return (m.weight_coherent * wigner_coherent(m.displacement, grid)
            + m.weight_displaced_fock * wigner_displaced_fock1(m.displacement, grid))


def wigner_mixture(s: ScatteringMatrix, alpha: complex, port, grid: GridSpec = DEFAULT_GRID) -> WignerField:
    return wigner_from_mixture(output_mixture(s, alpha, port), grid)


def wigner_numeric(rho: DensityMatrix, grid: GridSpec = DEFAULT_GRID) -> WignerField:
    """Wigner function of a truncated density matrix via number-basis kernels.

    ``W = (1/pi) sum_mn rho_mn K_nm`` with ``K = D(g) P D(g)^dag`` (``P`` the
    parity, ``g = (q + ip)/sqrt(2)``).  The kernels obey
    ``sqrt(n+1) K[n+1,m] = 2g K[n,m] - sqrt(m) K[n,m-1]``, which is iterated
    one column ``m`` at a time starting from ``K[0,0] = exp(-2|g|^2)``.
    """
    r = rho.elements
    if abs(r[-1, -1]) > TAIL_WARN:
        warnings.warn(f"population {abs(r[-1, -1]):.2e} at the cutoff n_max={rho.n_max}; "
                      "the Wigner function may be truncated", CutoffWarning, stacklevel=2)
    dim = r.shape[0]
    q, p = grid.mesh()
    g2 = np.sqrt(2) * (q + 1j * p)  # 2g
    sq = np.sqrt(np.arange(dim + 1))

    col = np.empty((dim,) + q.shape, dtype=complex)  # col[n] = K[n, m], n >= m
    col[0] = np.exp(-(q * q + p * p))
    for n in range(1, dim):
        col[n] = g2 * col[n - 1] / sq[n]
    w = r[0, 0].real * col[0].real
    for n in range(1, dim):
        w += 2 * (r[0, n] * col[n]).real

    for m in range(1, dim):
        prev = col  # K[n, m-1] for n >= m-1
        new = np.empty_like(col)
        # K[m-1, m] = conj(K[m, m-1])
        new[m] = (g2 * np.conj(prev[m]) - sq[m] * prev[m - 1]) / sq[m]
        for n in range(m, dim - 1):
            new[n + 1] = (g2 * new[n] - sq[m] * prev[n]) / sq[n + 1]
        col = new
        w += r[m, m].real * col[m].real
        for n in range(m + 1, dim):
            w += 2 * (r[m, n] * col[n]).real
    return WignerField(grid, w / np.pi)
