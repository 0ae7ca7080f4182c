import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockmix.scattering import (
    IDENTITY,
    ReciprocityError,
    ScatteringMatrix,
    bs_dielectric,
    bs_general,
    compose,
    mzi,
    mzi_coefficients,
    phase_matrix,
    random_scattering,
    reciprocity_deviations,
)

SQ = 1 / math.sqrt(2)
seeds = st.integers(0, 2**32 - 1)


def test_dielectric_transparent_is_identity():
    np.testing.assert_array_equal(bs_dielectric(1.0).matrix, np.eye(2))


def test_dielectric_balanced_entries():
    np.testing.assert_allclose(bs_dielectric(SQ).matrix, [[SQ, 1j * SQ], [1j * SQ, SQ]], atol=1e-15)


def test_dielectric_highly_reflective():
    assert abs(bs_dielectric(0.1).r) ** 2 == pytest.approx(0.99, abs=1e-15)


@pytest.mark.parametrize("t_mag", [-0.1, 1.01])
def test_dielectric_out_of_range(t_mag):
    with pytest.raises(ValueError):
        bs_dielectric(t_mag)


def test_dielectric_always_unitary(rng):
    assert all(bs_dielectric(t).is_unitary for t in rng.uniform(0, 1, 1000))


def test_general_identity_accepted():
    assert bs_general(1, 0, 0, 1).is_unitary


def test_general_real_asymmetric_accepted():
    s = bs_general(SQ, SQ, -SQ, SQ)
    assert (s.t_prime, s.r, s.r_prime, s.t) == (SQ, SQ, -SQ, SQ)


def test_general_violation_names_relation():
    with pytest.raises(ReciprocityError) as info:
        bs_general(SQ, SQ, SQ, SQ)
    assert "r* t' + r' t* = 0" in info.value.failures
    assert info.value.failures["r* t' + r' t* = 0"] == pytest.approx(1.0)
    assert "r* t' + r' t*" in str(info.value)


def test_reciprocity_deviations_for_lossy_matrix():
    dev = reciprocity_deviations([[0.5, 0], [0, 0.5]])
    assert dev["|r|^2 + |t|^2 = 1"] == pytest.approx(0.75)


@pytest.mark.parametrize("theta, diag", [(0, [1, 1]), (np.pi, [1, -1]), (np.pi / 2, [1, 1j])])
def test_phase_matrix(theta, diag):
    np.testing.assert_allclose(phase_matrix(theta).matrix, np.diag(diag), atol=1e-15)


def test_compose_single():
    b = bs_dielectric(0.3)
    np.testing.assert_array_equal(compose([b]).matrix, b.matrix)


def test_compose_empty():
    with pytest.raises(ValueError):
        compose([])


def test_compose_is_device_ordered():
    a, b = bs_dielectric(0.3), phase_matrix(0.7)
    np.testing.assert_allclose(compose([a, b]).matrix, b.matrix @ a.matrix)


@pytest.mark.parametrize("theta, t2", [(0.0, 0.0), (np.pi, 1.0)])
def test_balanced_mzi_extremes(theta, t2):
    b = bs_dielectric(SQ)
    m = compose([b, phase_matrix(theta), b])
    assert abs(m.t) ** 2 == pytest.approx(t2, abs=1e-15)
    assert abs(m.r) ** 2 == pytest.approx(1 - t2, abs=1e-15)


@pytest.mark.parametrize("theta", [0, np.pi / 3, np.pi / 2, np.pi])
def test_balanced_mzi_transmission(theta):
    b = bs_dielectric(SQ)
    m = mzi(b, theta, b)
    assert abs(m.t) ** 2 == pytest.approx(math.sin(theta / 2) ** 2, abs=1e-15)
    assert abs(m.r) ** 2 == pytest.approx(math.cos(theta / 2) ** 2, abs=1e-15)


def test_mzi_r_closed_form(rng):
    b1, b2 = random_scattering(rng), random_scattering(rng)
    theta = 0.83
    m = mzi(b1, theta, b2)
    # second splitter entries read as [[t2, r2'], [r2, t2']]
    t2, r2p = b2.matrix[0, 0], b2.matrix[0, 1]
    assert m.r == pytest.approx(b1.r * t2 + np.exp(1j * theta) * b1.t * r2p, abs=1e-14)


def test_mzi_with_inverse_is_identity():
    b = bs_dielectric(0.37)
    np.testing.assert_allclose(mzi(b, 0.0, b.dagger()).matrix, np.eye(2), atol=1e-15)


def test_matmul_operator():
    a, b = bs_dielectric(0.3), bs_dielectric(0.8)
    np.testing.assert_allclose((a @ b).matrix, a.matrix @ b.matrix)
    assert (IDENTITY @ a).r == a.r


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(1, 6))
def test_compose_preserves_reciprocity(seed, count):
    rng = np.random.default_rng(seed)
    m = compose([random_scattering(rng) for _ in range(count)])
    assert abs(abs(m.t) - abs(m.t_prime)) <= 1e-10
    assert abs(abs(m.r) - abs(m.r_prime)) <= 1e-10
    assert np.max(np.abs(m.matrix.conj().T @ m.matrix - np.eye(2))) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(seeds, st.floats(-10, 10))
def test_mzi_matches_closed_forms(seed, theta):
    rng = np.random.default_rng(seed)
    b1, b2 = random_scattering(rng), random_scattering(rng)
    m = mzi(b1, theta, b2)
    closed = mzi_coefficients(b1, theta, b2)
    for name in ("r", "t", "r_prime", "t_prime"):
        assert abs(getattr(m, name) - closed[name]) <= 1e-12


def test_cascade_of_three_mzis_is_valid():
    b = bs_dielectric(SQ)
    cascade = compose([mzi(b, th, b) for th in (0.3, 1.1, 2.0)])
    assert cascade.is_unitary
    assert abs(cascade.t) == pytest.approx(abs(cascade.t_prime), abs=1e-12)
