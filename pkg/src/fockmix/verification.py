"""Oracle-versus-simulator checks behind ``fockmix verify``.

Each check returns the largest error it observed; the runner compares it
with the check's tolerance.  All randomness is seeded, so reports are
reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .analytic import (
    balanced_mzi,
    balanced_mzi_stats,
    mean_photon_analytic,
    mixture_to_density,
    output_mixture,
)
from .fock import DensityMatrix
from .phase_space import (
    DEFAULT_GRID,
    GridSpec,
    phase_space_center,
    wigner_coherent,
    wigner_mixture,
    wigner_numeric,
)
from .scattering import bs_dielectric, random_scattering
from .simulator import (
    VACUUM,
    Coherent,
    Fock,
    General,
    displace,
    photon_stats,
    reduced_output,
    simulate_fourport,
)

FIG2A_ALPHA = math.sqrt(2) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
FIG2B_ALPHA = 10 * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Normalized oscillator eigenfunctions ``psi_n(x)``, ``n = 0..n_max`` (rows)."""
    x = np.asarray(x, dtype=float)
    psi = np.zeros((n_max + 1,) + x.shape)
    psi[0] = np.pi ** -0.25 * np.exp(-x * x / 2)
    if n_max >= 1:
        psi[1] = math.sqrt(2) * x * psi[0]
    for n in range(1, n_max):
        psi[n + 1] = math.sqrt(2 / (n + 1)) * x * psi[n] - math.sqrt(n / (n + 1)) * psi[n - 1]
    return psi


def position_density(rho: DensityMatrix, x) -> np.ndarray:
    psi = hermite_functions(rho.n_max, x)
    return np.einsum("m...,mn,n...->...", psi, rho.elements, psi).real


def wigner_quadrature(rho: DensityMatrix, q: float, p: float) -> float:
    """Wigner value from the position-space integral, by adaptive quadrature.

    ``W(q, p) = 1/(2 pi) int <q - y/2| rho |q + y/2> exp(i y p) dy``
    """
    r = rho.elements

    def kernel(y):
        a = hermite_functions(rho.n_max, q - y / 2)
        b = hermite_functions(rho.n_max, q + y / 2)
        return (a @ r @ b) * np.exp(1j * y * p)

    reach = 2 * (abs(q) + math.sqrt(2 * rho.n_max + 1) + 10)
    re, _ = quad(lambda y: kernel(y).real, -reach, reach, limit=400, epsabs=1e-13, epsrel=1e-12)
    im, _ = quad(lambda y: kernel(y).imag, -reach, reach, limit=400, epsabs=1e-13, epsrel=1e-12)
    if abs(im) > 1e-8:
        raise ArithmeticError(f"Wigner integral has imaginary part {im:.3e}")
    return re / (2 * np.pi)


def random_alpha(rng: np.random.Generator, max_mag: float) -> complex:
    return max_mag * math.sqrt(rng.uniform()) * complex(np.exp(2j * np.pi * rng.uniform()))


def random_general(rng: np.random.Generator, support: int = 4) -> General:
    c = rng.standard_normal(support + 1) + 1j * rng.standard_normal(support + 1)
    return General(tuple(c / np.linalg.norm(c)))


# -- checks -----------------------------------------------------------------

def check_mixed_state_theorem() -> float:
    rng = np.random.default_rng(101)
    err = 0.0
    for _ in range(20):
        s = random_scattering(rng)
        alpha = random_alpha(rng, 2.0)
        for port in ("lower", "upper"):
            num = reduced_output(s, Fock(1), Coherent(alpha), port, n_max=40)
            ana = mixture_to_density(output_mixture(s, alpha, port), 40)
            err = max(err, float(np.max(np.abs(num.elements - ana.elements))))
    return err


def fig2_field(t_mag: float, alpha: complex):
    s = bs_dielectric(t_mag)
    grid = GridSpec.centered(*phase_space_center(s.t * alpha))
    return wigner_mixture(s, alpha, "lower", grid)


def check_fig2a_center() -> float:
    return abs(math.pi * fig2_field(1 / math.sqrt(2), FIG2A_ALPHA).center_value())


def check_fig2a_nonnegative() -> float:
    return max(0.0, -math.pi * float(fig2_field(1 / math.sqrt(2), FIG2A_ALPHA).values.min()))


def check_fig2a_argmin() -> float:
    """Distance (in grid cells) beyond one cell between the in-support minimum and (1, 1).

    Far outside the state the field underflows to ~1e-50, below the rounding
    noise at the true zero, so the search is restricted to radius 3 around
    the displaced center.
    """
    w = fig2_field(1 / math.sqrt(2), FIG2A_ALPHA)
    q, p = w.grid.mesh()
    masked = np.where((q - 1) ** 2 + (p - 1) ** 2 <= 9, w.values, np.inf)
    i, j = np.unravel_index(np.argmin(masked), masked.shape)
    cells = max(abs(w.grid.q[i] - 1) / w.grid.dq, abs(w.grid.p[j] - 1) / w.grid.dp)
    return max(0.0, cells - 1.0)


def check_fig2b_center() -> float:
    return abs(math.pi * fig2_field(0.1, FIG2B_ALPHA).center_value() + 0.98)


def check_conservation_numeric() -> float:
    rng = np.random.default_rng(202)
    err = 0.0
    for _ in range(10):
        s, alpha = random_scattering(rng), random_alpha(rng, 2.0)
        psi = simulate_fourport(s, Fock(1), Coherent(alpha), n_max=40)
        n = np.arange(41)
        total = float(n @ (np.abs(psi.amp) ** 2).sum(axis=1) + n @ (np.abs(psi.amp) ** 2).sum(axis=0))
        err = max(err, abs(total - (1 + abs(alpha) ** 2)))
    return err


def check_conservation_analytic() -> float:
    """Relative error, so the tolerance is a multiple of machine epsilon."""
    rng = np.random.default_rng(303)
    err = 0.0
    for _ in range(1000):
        s, alpha = random_scattering(rng), random_alpha(rng, 5.0)
        total = mean_photon_analytic(s, alpha, "upper").mean + mean_photon_analytic(s, alpha, "lower").mean
        expected = 1 + abs(alpha) ** 2
        err = max(err, abs(total - expected) / expected)
    return err


THETAS = np.linspace(0, 2 * np.pi, 25)
ALPHA_MAGS = (0.0, 1.0, 2.0)


def _fig4_expected(theta: float, a: float) -> tuple[float, float]:
    return (math.sin(theta / 2) ** 2 + a * a * math.cos(theta / 2) ** 2,
            math.cos(theta / 2) ** 2 + a * a * math.sin(theta / 2) ** 2)


def check_fig4_analytic() -> float:
    err = 0.0
    for theta in THETAS:
        s = balanced_mzi(theta)
        for a in ALPHA_MAGS:
            up, lo = _fig4_expected(theta, a)
            got_up = mean_photon_analytic(s, a, "upper").mean
            got_lo = mean_photon_analytic(s, a, "lower").mean
            bu, bl = balanced_mzi_stats(theta, a)
            err = max(err, abs(got_up - up), abs(got_lo - lo), abs(bu.mean - up), abs(bl.mean - lo))
            if a == 1.0:
                err = max(err, abs(got_up - 1), abs(got_lo - 1), abs(bu.mean - 1), abs(bl.mean - 1))
    return err


def _numeric_stats(theta: float, a: float):
    s = balanced_mzi(theta)
    return [photon_stats(reduced_output(s, Fock(1), Coherent(a), port, n_max=40)) for port in ("upper", "lower")]


def check_fig4_numeric() -> float:
    err = 0.0
    for theta in THETAS[::3]:
        for a in ALPHA_MAGS:
            up, lo = _fig4_expected(theta, a)
            nu, nl = _numeric_stats(theta, a)
            err = max(err, abs(nu.mean - up), abs(nl.mean - lo))
            if a == 1.0:
                err = max(err, abs(nu.mean - 1), abs(nl.mean - 1))
    return err


def check_msd_numeric() -> float:
    err = 0.0
    for theta in THETAS[::3]:
        s = balanced_mzi(theta)
        for a in ALPHA_MAGS:
            nu, nl = _numeric_stats(theta, a)
            bu, bl = balanced_mzi_stats(theta, a)
            gu, gl = mean_photon_analytic(s, a, "upper"), mean_photon_analytic(s, a, "lower")
            err = max(err, abs(nu.msd - bu.msd), abs(nl.msd - bl.msd), abs(nu.msd - gu.msd), abs(nl.msd - gl.msd))
    rng = np.random.default_rng(404)
    for _ in range(5):
        s, alpha = random_scattering(rng), random_alpha(rng, 2.0)
        for port in ("upper", "lower"):
            num = photon_stats(reduced_output(s, Fock(1), Coherent(alpha), port, n_max=40))
            err = max(err, abs(num.msd - mean_photon_analytic(s, alpha, port).msd))
    return err


def check_msd_difference() -> float:
    err = 0.0
    for theta in np.linspace(0, 2 * np.pi, 73):
        for a in (0.0, 0.5, 1.0, 2.0, 3.0):
            up, lo = balanced_mzi_stats(theta, a)
            err = max(err, abs((up.msd - lo.msd) - a * a * math.cos(theta)))
            s = balanced_mzi(theta)
            gu, gl = mean_photon_analytic(s, a, "upper"), mean_photon_analytic(s, a, "lower")
            err = max(err, abs((gu.msd - gl.msd) - a * a * math.cos(theta)))
    return err


def check_displacement_theorem() -> float:
    rng = np.random.default_rng(505)
    err = 0.0
    for _ in range(10):
        s, psi = random_scattering(rng), random_general(rng, 4)
        alpha = random_alpha(rng, 1.5)
        for port, amp in (("lower", s.t), ("upper", s.r)):
            with_coh = reduced_output(s, psi, Coherent(alpha), port, n_max=30)
            with_vac = reduced_output(s, psi, VACUUM, port, n_max=30)
            shifted = displace(with_vac, amp * alpha)
            err = max(err, float(np.max(np.abs(with_coh.elements - shifted.elements))))
    return err


def check_hom_mzi() -> float:
    err = 0.0
    for theta in np.linspace(0, np.pi, 25):
        psi = simulate_fourport(balanced_mzi(theta), Fock(1), Fock(1), n_max=4)
        probs = np.abs(psi.amp) ** 2
        expect = (math.cos(theta) ** 2, 0.5 * math.sin(theta) ** 2, 0.5 * math.sin(theta) ** 2)
        got = (probs[1, 1], probs[2, 0], probs[0, 2])
        n = np.arange(5)
        means = (n @ probs.sum(axis=1), n @ probs.sum(axis=0))
        err = max(err, *(abs(g - e) for g, e in zip(got, expect)), *(abs(m - 1) for m in means))
    return err


def _fig2a_numeric_rho(n_max: int = 30) -> DensityMatrix:
    return reduced_output(bs_dielectric(1 / math.sqrt(2)), Fock(1), Coherent(FIG2A_ALPHA), "lower", n_max=n_max)


SPOT_POINTS = ((0.0, 0.0), (1.0, 1.0), (1.5, 0.3), (-0.7, 1.8), (2.2, 2.0))


def check_wigner_quadrature() -> float:
    rho = _fig2a_numeric_rho()
    err = 0.0
    for q, p in SPOT_POINTS:
        grid = GridSpec(q - 0.5, q + 0.5, p - 0.5, p + 0.5, 3, 3)  # middle cell centered on (q, p)
        kernel_value = wigner_numeric(rho, grid).center_value()
        err = max(err, abs(kernel_value - wigner_quadrature(rho, q, p)))
    return err


def check_wigner_normalization() -> float:
    err = 0.0
    states = [
        DensityMatrix(np.diag([1.0, 0.0, 0.0])),
        DensityMatrix(np.diag([0.0, 1.0, 0.0])),
        _fig2a_numeric_rho(),
    ]
    for rho in states:
        err = max(err, abs(wigner_numeric(rho, DEFAULT_GRID).integral() - 1.0))
    err = max(err, abs(wigner_coherent(FIG2A_ALPHA / 2, DEFAULT_GRID).integral() - 1.0))
    return err


def check_wigner_covariance() -> float:
    rho = _fig2a_numeric_rho(40)
    beta = 0.4 - 0.3j
    dq, dp = phase_space_center(beta)
    grid = GridSpec.centered(0.0, 0.0, 6.0, 121)
    shifted_grid = GridSpec(grid.q_min - dq, grid.q_max - dq, grid.p_min - dp, grid.p_max - dp, grid.nq, grid.np)
    lhs = wigner_numeric(displace(rho, beta), grid).values
    rhs = wigner_numeric(rho, shifted_grid).values
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class Check:
    name: str
    func: Callable[[], float]
    tolerance: float


CHECKS = (
    Check("mixed-state-theorem", check_mixed_state_theorem, 1e-8),
    Check("fig2a-center", check_fig2a_center, 1e-6),
    Check("fig2a-nonnegative", check_fig2a_nonnegative, 1e-9),
    Check("fig2a-argmin", check_fig2a_argmin, 1e-12),
    Check("fig2b-center", check_fig2b_center, 1e-9),
    Check("conservation-numeric", check_conservation_numeric, 1e-6),
    Check("conservation-analytic", check_conservation_analytic, 1e-13),
    Check("fig4-analytic", check_fig4_analytic, 1e-12),
    Check("fig4-numeric", check_fig4_numeric, 1e-6),
    Check("msd-numeric", check_msd_numeric, 1e-6),
    Check("msd-difference", check_msd_difference, 1e-10),
    Check("displacement-theorem", check_displacement_theorem, 1e-7),
    Check("hom-mzi", check_hom_mzi, 1e-8),
    Check("wigner-quadrature", check_wigner_quadrature, 1e-6),
    Check("wigner-normalization", check_wigner_normalization, 1e-4),
    Check("wigner-covariance", check_wigner_covariance, 1e-6),
)


@dataclass
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    passed: bool
    seconds: float


def run_checks(only=None, tolerance: float | None = None) -> list[CheckResult]:
    selected = [c for c in CHECKS if not only or c.name in only]
    unknown = set(only or ()) - {c.name for c in CHECKS}
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(sorted(unknown))}")
    results = []
    for c in selected:
        tol = c.tolerance if tolerance is None else tolerance
        start = time.perf_counter()
        err = float(c.func())
        results.append(CheckResult(c.name, err, tol, bool(err <= tol), time.perf_counter() - start))
    return results


def report(results: list[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
