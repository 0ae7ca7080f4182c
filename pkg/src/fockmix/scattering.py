"""2x2 scattering matrices of lossless passive four-ports.

A matrix ``[[t', r], [r', t]]`` maps input annihilation operators
``(a_0, a_1)`` to output operators ``(a_upper, a_lower)``.  Row 0 is the
upper output (ports 2/4), row 1 the lower output (ports 3/5).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

VALIDATION_TOL = 1e-10


class ReciprocityError(ValueError):
    """A matrix failed one of the Stokes reciprocity relations.

    ``failures`` maps each violated relation to its deviation.
    """

    def __init__(self, failures: dict[str, float]):
        self.failures = dict(failures)
        detail = "; ".join(f"{name} (deviation {dev:.3e})" for name, dev in failures.items())
        super().__init__(f"reciprocity violated: {detail}")

    @property
    def relation(self) -> str:
        return next(iter(self.failures))

    @property
    def deviation(self) -> float:
        return max(self.failures.values())


def reciprocity_deviations(matrix) -> dict[str, float]:
    """Deviation of each Stokes relation (and unitarity) for ``[[t', r], [r', t]]``."""
    m = np.asarray(matrix, dtype=complex)
    tp, r, rp, t = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    return {
        "|r'| = |r|": abs(abs(rp) - abs(r)),
        "|t| = |t'|": abs(abs(t) - abs(tp)),
        "|r|^2 + |t|^2 = 1": abs(abs(r) ** 2 + abs(t) ** 2 - 1.0),
        "r* t' + r' t* = 0": abs(np.conj(r) * tp + rp * np.conj(t)),
        "B^dagger B = I": float(np.max(np.abs(m.conj().T @ m - np.eye(2)))),
    }


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"scattering matrix must be 2x2, got {m.shape}")
        failures = {k: v for k, v in reciprocity_deviations(m).items() if v > VALIDATION_TOL}
        if failures:
            raise ReciprocityError(failures)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def t_prime(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def r(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def r_prime(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def t(self) -> complex:
        return complex(self.matrix[1, 1])

    @property
    def is_unitary(self) -> bool:
        return bool(np.allclose(self.matrix.conj().T @ self.matrix, np.eye(2), rtol=0, atol=1e-12))

    def dagger(self) -> "ScatteringMatrix":
        return ScatteringMatrix(self.matrix.conj().T)

    def __matmul__(self, other: "ScatteringMatrix") -> "ScatteringMatrix":
        return ScatteringMatrix(self.matrix @ other.matrix)

    def __repr__(self):
        return (f"ScatteringMatrix(t'={self.t_prime:.6g}, r={self.r:.6g}, "
                f"r'={self.r_prime:.6g}, t={self.t:.6g})")


IDENTITY = ScatteringMatrix(np.eye(2))


def bs_dielectric(t_mag: float) -> ScatteringMatrix:
    """Symmetric splitter with real transmission and reflection phase ``i``."""
    if not 0.0 <= t_mag <= 1.0:
        raise ValueError(f"t_mag must lie in [0, 1], got {t_mag!r}")
    t = float(t_mag)
    r = 1j * np.sqrt(max(0.0, 1.0 - t * t))
    return ScatteringMatrix([[t, r], [r, t]])


def bs_general(t_prime: complex, r: complex, r_prime: complex, t: complex) -> ScatteringMatrix:
    return ScatteringMatrix([[t_prime, r], [r_prime, t]])


def phase_matrix(theta: float) -> ScatteringMatrix:
    """Phase ``theta`` on the lower arm: ``diag(1, exp(i theta))``."""
    return ScatteringMatrix(np.diag([1.0, np.exp(1j * theta)]))


def compose(sequence: Sequence[ScatteringMatrix]) -> ScatteringMatrix:
    """Device-order composition: ``sequence[0]`` is traversed first."""
    if len(sequence) == 0:
        raise ValueError("cannot compose an empty device list")
    m = np.eye(2, dtype=complex)
    for device in sequence:
        m = device.matrix @ m
    return ScatteringMatrix(m)


def mzi(bs1: ScatteringMatrix, theta: float, bs2: ScatteringMatrix) -> ScatteringMatrix:
    """Mach-Zehnder interferometer ``bs2 . U(theta) . bs1``.

    The result's ``r``, ``t``, ``r_prime``, ``t_prime`` are the interferometer's
    effective coefficients; see :func:`mzi_coefficients` for the closed forms.
    """
    return compose([bs1, phase_matrix(theta), bs2])


def mzi_coefficients(bs1: ScatteringMatrix, theta: float, bs2: ScatteringMatrix) -> dict[str, complex]:
    """Closed-form MZI coefficients.

    The second splitter faces the other way in the interferometer, so its
    matrix entries are read as ``[[t2, r2'], [r2, t2']]``.
    """
    t1p, r1, r1p, t1 = bs1.t_prime, bs1.r, bs1.r_prime, bs1.t
    t2, r2p, r2, t2p = bs2.matrix[0, 0], bs2.matrix[0, 1], bs2.matrix[1, 0], bs2.matrix[1, 1]
    e = np.exp(1j * theta)
    return {
        "r": complex(r1 * t2 + e * t1 * r2p),
        "t": complex(r1 * r2 + e * t1 * t2p),
        "r_prime": complex(t1p * r2 + e * r1p * t2p),
        "t_prime": complex(t1p * t2 + e * r1p * r2p),
    }


def random_scattering(rng: np.random.Generator) -> ScatteringMatrix:
    """Haar-random element of U(2)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return ScatteringMatrix(q * (d / np.abs(d)))
