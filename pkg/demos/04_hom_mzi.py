"""Two single photons through a balanced Mach-Zehnder interferometer.

The coincidence probability is cos^2(theta); each bunched outcome occurs with
probability sin^2(theta)/2.  The mean count per port stays at 1 for every
phase, so average intensities reveal nothing about the interference.
"""

import numpy as np

from fockmix.analytic import balanced_mzi, hom_mzi_output
from fockmix.simulator import Fock, simulate_fourport

print(" theta   P(1,1)  P(2,0)  P(0,2)   simulated P(1,1)")
for theta in np.linspace(0, np.pi, 9):
    h = hom_mzi_output(theta)
    psi = simulate_fourport(balanced_mzi(theta), Fock(1), Fock(1), 4)
    print(f"{theta:6.3f} {h.w_coincidence:7.4f} {h.w_20:7.4f} {h.w_02:7.4f} {psi.probability(1, 1):12.4f}")
