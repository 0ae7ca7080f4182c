"""Wigner functions of the mixture for a balanced and a highly reflective splitter.

Balanced, alpha = sqrt(2) e^{i pi/4}: equal weights, the negative dip of the
displaced photon is exactly cancelled and the minimum is 0 at (1, 1).

|t| = 0.1, alpha = 10 e^{i pi/4}: 99 % displaced photon, the value at
(1, 1) is -0.98/pi.  This case is evaluated in closed form since |alpha| = 10
needs a very large cutoff.

Pass --plot to draw both surfaces with matplotlib.
"""

import math
import sys

import numpy as np

from fockmix.phase_space import GridSpec, wigner_mixture
from fockmix.scattering import bs_dielectric

CASES = {
    "balanced": (1 / math.sqrt(2), math.sqrt(2) * np.exp(1j * np.pi / 4)),
    "reflective": (0.1, 10 * np.exp(1j * np.pi / 4)),
}
grid = GridSpec.centered(1.0, 1.0, half_width=3.0, points=121)

fields = {}
for name, (t_mag, alpha) in CASES.items():
    w = wigner_mixture(bs_dielectric(t_mag), alpha, "lower", grid)
    fields[name] = w
    print(f"{name:>10}: pi*W(1,1) = {math.pi * w.center_value():+.6f}, "
          f"min pi*W = {math.pi * w.values.min():+.6f}, integral = {w.integral():.6f}")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), subplot_kw={"projection": "3d"})
    q, p = grid.mesh()
    for ax, (name, w) in zip(axes, fields.items()):
        ax.plot_surface(q, p, math.pi * w.values, cmap="viridis", linewidth=0)
        ax.set(title=name, xlabel="q", ylabel="p", zlabel="pi W")
    plt.tight_layout()
    plt.show()
