"""A single photon and a coherent state meet at a beam splitter.

Tracing out one output port leaves the other in a statistical mixture of a
coherent state and a displaced single-photon state.  This script builds the
full two-mode output in a truncated Fock space, reduces it, and compares it
with the two-component mixture element by element.
"""

import math

import numpy as np

from fockmix.analytic import mixture_to_density, output_mixture
from fockmix.fock import purity
from fockmix.scattering import bs_dielectric
from fockmix.simulator import Coherent, Fock, reduced_output

N_MAX = 40
alpha = math.sqrt(2) * np.exp(1j * np.pi / 4)

for t_mag in (1 / math.sqrt(2), 0.3, 0.9):
    s = bs_dielectric(t_mag)
    rho = reduced_output(s, Fock(1), Coherent(alpha), "lower", N_MAX)
    mix = output_mixture(s, alpha, "lower")
    err = np.max(np.abs(rho.elements - mixture_to_density(mix, N_MAX).elements))
    print(f"|t| = {t_mag:.3f}: weights (coherent, displaced |1>) = "
          f"({mix.weight_coherent:.3f}, {mix.weight_displaced_fock:.3f}), "
          f"displacement = {mix.displacement:.3f}, purity = {purity(rho):.4f}, "
          f"max |simulated - mixture| = {err:.1e}")
