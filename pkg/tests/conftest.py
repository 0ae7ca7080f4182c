import math

import numpy as np
import pytest
from scipy.linalg import eigh


def strip_global_phase(a, b):
    """Rotate ``b`` by the global phase that best aligns it with ``a``."""
    overlap = np.vdot(b, a)
    return b * (overlap / abs(overlap)) if abs(overlap) > 0 else b


def displacement_expm(alpha, n_max, pad=120):
    """Independent oracle: exp(alpha a^dag - alpha* a) on a padded space, via eigh."""
    n = n_max + pad
    a = np.diag(np.sqrt(np.arange(1, n + 1)), 1)
    h = 1j * (alpha * a.T - np.conj(alpha) * a)
    w, v = eigh(h)
    return ((v * np.exp(-1j * w)) @ v.conj().T)[: n_max + 1, : n_max + 1]


def fock_product_oracle(s, n0, n1, n_max):
    """Output amplitudes of |n0, n1> by expanding the creation-operator substitution.

    a_j^dag -> sum_k S[k, j] a_k^dag, then binomial expansion of both powers.
    """
    out = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    m = np.asarray(s.matrix)
    for j0 in range(n0 + 1):
        c0 = math.comb(n0, j0) * m[0, 0] ** j0 * m[1, 0] ** (n0 - j0)
        for j1 in range(n1 + 1):
            c1 = math.comb(n1, j1) * m[0, 1] ** j1 * m[1, 1] ** (n1 - j1)
            p, q = j0 + j1, (n0 - j0) + (n1 - j1)
            out[p, q] += c0 * c1 * math.sqrt(math.factorial(p) * math.factorial(q))
    return out / math.sqrt(math.factorial(n0) * math.factorial(n1))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
