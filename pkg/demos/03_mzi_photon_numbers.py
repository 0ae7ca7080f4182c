"""Mean photon numbers and their variances behind a balanced Mach-Zehnder interferometer.

With a single photon in one input and a coherent state in the other, the
average counts are sin^2(theta/2) + |alpha|^2 cos^2(theta/2) (upper) and
cos^2(theta/2) + |alpha|^2 sin^2(theta/2) (lower).  For |alpha| = 1 both
are flat at 1.  The simulated values are printed next to the closed forms.
"""

import numpy as np

from fockmix.analytic import balanced_mzi, balanced_mzi_stats
from fockmix.simulator import Coherent, Fock, photon_stats, reduced_output

print(" theta  |a|   <n>_up  <n>_low   sim_up  sim_low   msd_up-msd_low  |a|^2 cos")
for a in (0.0, 1.0, 2.0):
    for theta in np.linspace(0, 2 * np.pi, 5):
        up, lo = balanced_mzi_stats(theta, a)
        s = balanced_mzi(theta)
        nu, nl = (photon_stats(reduced_output(s, Fock(1), Coherent(a), port, 40)) for port in ("upper", "lower"))
        print(f"{theta:6.3f} {a:4.1f} {up.mean:8.4f} {lo.mean:8.4f} {nu.mean:8.4f} {nl.mean:8.4f} "
              f"{up.msd - lo.msd:15.4f} {a * a * np.cos(theta):10.4f}")
