"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from fockmix.analytic import balanced_mzi, balanced_mzi_stats, mean_photon_analytic, mixture_to_density, output_mixture
from fockmix.phase_space import DEFAULT_GRID, GridSpec, phase_space_center, wigner_coherent, wigner_mixture, wigner_numeric
from fockmix.scattering import bs_dielectric, random_scattering
from fockmix.simulator import VACUUM, Coherent, Fock, General, displace, photon_stats, reduced_output, simulate_fourport
from fockmix.verification import wigner_quadrature

SQ = 1 / math.sqrt(2)
E45 = np.exp(1j * np.pi / 4)


@pytest.fixture
def verdict(capsys):
    def emit(criterion: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        return ok
    return emit


def rand_alpha(rng, max_mag):
    return max_mag * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


def test_c01_mixed_state_theorem(verdict):
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    err = 0.0
    for _ in range(20):
        s, alpha = random_scattering(rng), rand_alpha(rng, 2.0)
        for port in ("upper", "lower"):
            num = reduced_output(s, Fock(1), Coherent(alpha), port, 40)
            ana = mixture_to_density(output_mixture(s, alpha, port), 40)
            err = max(err, float(np.max(np.abs(num.elements - ana.elements))))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-8 and elapsed <= 30
    assert verdict("1", ok, f"max elementwise error {err:.2e} (tol 1e-8), 20 devices, {elapsed:.1f} s (limit 30 s)")


def test_c02_balanced_wigner_zero(verdict):
    s, alpha = bs_dielectric(SQ), math.sqrt(2) * E45
    # default grid size and resolution, centered on the displaced Fock component
    grid = GridSpec.centered(*phase_space_center(s.t * alpha), DEFAULT_GRID.q_max, DEFAULT_GRID.nq)
    w = wigner_mixture(s, alpha, "lower", grid)
    center = abs(math.pi * w.center_value())
    floor = math.pi * float(w.values.min())
    q, p = grid.mesh()
    near = np.where((q - 1) ** 2 + (p - 1) ** 2 <= 9, w.values, np.inf)
    i, j = np.unravel_index(np.argmin(near), near.shape)
    cells = max(abs(grid.q[i] - 1) / grid.dq, abs(grid.p[j] - 1) / grid.dp)
    ok = center <= 1e-6 and floor >= -1e-9 and cells <= 1
    assert verdict("2", ok, f"|pi W(1,1)| = {center:.1e} (tol 1e-6), min pi W = {floor:.1e} (>= -1e-9), "
                            f"argmin {cells:.0f} cells from (1,1)")


def test_c03_reflective_wigner_minimum(verdict):
    s, alpha = bs_dielectric(0.1), 10 * E45
    m = output_mixture(s, alpha, "lower")
    w = wigner_mixture(s, alpha, "lower", GridSpec.centered(1, 1, 8, 201))
    val = math.pi * w.center_value()
    ok = (abs(val + 0.98) <= 1e-9 and abs(m.weight_coherent - 0.01) <= 1e-12
          and abs(m.displacement - E45) <= 1e-12)
    assert verdict("3", ok, f"pi W(1,1) = {val:.12f} (target -0.98 +/- 1e-9), weights "
                            f"{m.weight_coherent:.3f}/{m.weight_displaced_fock:.3f}")


def test_c04_photon_number_conservation(verdict):
    rng = np.random.default_rng(77)
    num_err = 0.0
    for _ in range(10):
        s, alpha = random_scattering(rng), rand_alpha(rng, 2.0)
        total = sum(photon_stats(reduced_output(s, Fock(1), Coherent(alpha), port, 40)).mean
                    for port in ("upper", "lower"))
        num_err = max(num_err, abs(total - 1 - abs(alpha) ** 2))
    ana_err = 0.0
    for _ in range(1000):
        s, alpha = random_scattering(rng), rand_alpha(rng, 5.0)
        total = mean_photon_analytic(s, alpha, "upper").mean + mean_photon_analytic(s, alpha, "lower").mean
        ana_err = max(ana_err, abs(total - 1 - abs(alpha) ** 2) / (1 + abs(alpha) ** 2))
    ok = num_err <= 1e-6 and ana_err <= 1e-13
    assert verdict("4", ok, f"numeric {num_err:.1e} (tol 1e-6), analytic relative {ana_err:.1e} (tol 1e-13)")


def test_c05_mzi_sweep(verdict):
    ana_err = num_err = flat_err = 0.0
    for theta in np.linspace(0, 2 * np.pi, 25):
        s = balanced_mzi(theta)
        for a in (0.0, 1.0, 2.0):
            up = math.sin(theta / 2) ** 2 + a * a * math.cos(theta / 2) ** 2
            lo = math.cos(theta / 2) ** 2 + a * a * math.sin(theta / 2) ** 2
            got = (mean_photon_analytic(s, a, "upper").mean, mean_photon_analytic(s, a, "lower").mean)
            ana_err = max(ana_err, abs(got[0] - up), abs(got[1] - lo))
            if a == 1.0:
                flat_err = max(flat_err, abs(got[0] - 1), abs(got[1] - 1))
    for theta in np.linspace(0, 2 * np.pi, 9):
        s = balanced_mzi(theta)
        for a in (0.0, 1.0, 2.0):
            nu, nl = (photon_stats(reduced_output(s, Fock(1), Coherent(a), port, 40)).mean for port in ("upper", "lower"))
            up = math.sin(theta / 2) ** 2 + a * a * math.cos(theta / 2) ** 2
            lo = math.cos(theta / 2) ** 2 + a * a * math.sin(theta / 2) ** 2
            num_err = max(num_err, abs(nu - up), abs(nl - lo))
    ok = ana_err <= 1e-12 and flat_err <= 1e-12 and num_err <= 1e-6
    assert verdict("5", ok, f"analytic {ana_err:.1e} (tol 1e-12), |alpha|=1 flatness {flat_err:.1e}, "
                            f"numeric {num_err:.1e} (tol 1e-6)")


def test_c06_variance_identities(verdict):
    rng = np.random.default_rng(6)
    num_err = diff_err = 0.0
    cases = [(balanced_mzi(th), a) for th in np.linspace(0, 2 * np.pi, 7) for a in (0.0, 1.0, 2.0)]
    cases += [(random_scattering(rng), rand_alpha(rng, 2.0)) for _ in range(5)]
    for s, alpha in cases:
        for port in ("upper", "lower"):
            num = photon_stats(reduced_output(s, Fock(1), Coherent(alpha), port, 40))
            num_err = max(num_err, abs(num.msd - mean_photon_analytic(s, alpha, port).msd))
    for theta in np.linspace(0, 2 * np.pi, 7):
        for a in (0.0, 1.0, 2.0):
            up, lo = balanced_mzi_stats(theta, a)
            num_err = max(num_err, abs(photon_stats(reduced_output(
                balanced_mzi(theta), Fock(1), Coherent(a), "upper", 40)).msd - up.msd))
    for theta in np.linspace(0, 2 * np.pi, 73):
        for a in (0.0, 0.5, 1.0, 2.0, 3.0):
            up, lo = balanced_mzi_stats(theta, a)
            diff_err = max(diff_err, abs(up.msd - lo.msd - a * a * math.cos(theta)))
    ok = num_err <= 1e-6 and diff_err <= 1e-10
    assert verdict("6", ok, f"msd numeric vs closed form {num_err:.1e} (tol 1e-6), "
                            f"msd difference {diff_err:.1e} (tol 1e-10)")


def test_c07_displacement_theorem(verdict):
    rng = np.random.default_rng(7)
    err = 0.0
    for _ in range(10):
        s = random_scattering(rng)
        k = int(rng.integers(1, 5))
        c = rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1)
        psi = General(tuple(c / np.linalg.norm(c)))
        alpha = rand_alpha(rng, 1.5)
        for port, amp in (("lower", s.t), ("upper", s.r)):
            lhs = reduced_output(s, psi, Coherent(alpha), port, 30)
            rhs = displace(reduced_output(s, psi, VACUUM, port, 30), amp * alpha)
            err = max(err, float(np.max(np.abs(lhs.elements - rhs.elements))))
    assert verdict("7", err <= 1e-7, f"max elementwise error {err:.2e} (tol 1e-7), 10 inputs")


def test_c08_hom_through_mzi(verdict):
    err = 0.0
    n = np.arange(5)
    for theta in np.linspace(0, np.pi, 25):
        prob = np.abs(simulate_fourport(balanced_mzi(theta), Fock(1), Fock(1), 4).amp) ** 2
        c, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2 / 2
        err = max(err, abs(prob[1, 1] - c), abs(prob[2, 0] - s2), abs(prob[0, 2] - s2),
                  abs(n @ prob.sum(axis=1) - 1), abs(n @ prob.sum(axis=0) - 1))
    assert verdict("8", err <= 1e-8, f"max probability/mean error {err:.1e} (tol 1e-8), 25 angles")


def test_c09_wigner_engine(verdict):
    rho = reduced_output(bs_dielectric(SQ), Fock(1), Coherent(math.sqrt(2) * E45), "lower", 30)
    quad_err = 0.0
    for q, p in ((0.0, 0.0), (1.0, 1.0), (0.4, 1.6), (-0.5, -0.2), (2.0, 0.7)):
        kernel = wigner_numeric(rho, GridSpec.centered(q, p, 0.5, 3)).center_value()
        quad_err = max(quad_err, abs(kernel - wigner_quadrature(rho, q, p)))
    norm_err = max(abs(wigner_numeric(rho, DEFAULT_GRID).integral() - 1),
                   abs(wigner_coherent(0.3 + 0.2j, DEFAULT_GRID).integral() - 1))
    beta = -0.25 + 0.35j
    bq, bp = phase_space_center(beta)
    grid = GridSpec.centered(0, 0, 6, 101)
    back = GridSpec(grid.q_min - bq, grid.q_max - bq, grid.p_min - bp, grid.p_max - bp, grid.nq, grid.np)
    rho40 = reduced_output(bs_dielectric(SQ), Fock(1), Coherent(math.sqrt(2) * E45), "lower", 40)
    cov_err = float(np.max(np.abs(wigner_numeric(displace(rho40, beta), grid).values
                                  - wigner_numeric(rho40, back).values)))
    ok = quad_err <= 1e-6 and norm_err <= 1e-4 and cov_err <= 1e-6
    assert verdict("9", ok, f"quadrature {quad_err:.1e} (tol 1e-6), normalization {norm_err:.1e} (tol 1e-4), "
                            f"covariance {cov_err:.1e} (tol 1e-6)")


def test_c10_verify_command(verdict):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "fockmix.cli", "verify"], capture_output=True, text=True,
                          timeout=300, check=False)
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < 120
    assert verdict("10", ok, f"fockmix verify exit {proc.returncode} in {elapsed:.1f} s (limit 120 s)"), proc.stderr
