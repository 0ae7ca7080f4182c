"""Feeding a coherent state into the second input only displaces the output.

For any state |psi> in port 0, replacing the vacuum in port 1 by |alpha>
shifts the reduced output at the lower port by t*alpha (upper port: r*alpha)
and changes nothing else.  In the limit of a highly reflective splitter
with t*alpha fixed this becomes a displacement of |psi> itself.
"""

import numpy as np

from fockmix.scattering import random_scattering
from fockmix.simulator import VACUUM, Coherent, General, displace, reduced_output

rng = np.random.default_rng(5)
c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
psi = General(tuple(c / np.linalg.norm(c)))
alpha = 1.2 - 0.4j

for trial in range(3):
    s = random_scattering(rng)
    for port, amp in (("lower", s.t), ("upper", s.r)):
        with_coherent = reduced_output(s, psi, Coherent(alpha), port, 30)
        shifted_vacuum = displace(reduced_output(s, psi, VACUUM, port, 30), amp * alpha)
        err = np.max(np.abs(with_coherent.elements - shifted_vacuum.elements))
        print(f"device {trial}, {port:>5} port: max deviation {err:.1e}")
