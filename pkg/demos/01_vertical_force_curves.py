#!/usr/bin/env python3
# Period-averaged vertical Casimir force for the four sphere-position hypotheses.

import numpy as np

from corrugated_casimir import PositionDistribution, default_experiment, force_curve
from corrugated_casimir.vertical import DISTRIBUTIONS, averaged_force, averaged_force_series

showplot = False
config = default_experiment()

curves = {d: force_curve(config, d, 169.5, 400.0, steps=24) for d in DISTRIBUTIONS}

print("# a_nm " + " ".join(f"{d.value:>12}" for d in DISTRIBUTIONS))
a = curves[PositionDistribution.UNIFORM].a_nm
for i, sep in enumerate(a):
    print(f"{sep:6.1f} " + " ".join(f"{curves[d].F_pN[i]:12.4f}" for d in DISTRIBUTIONS))

# the amplitude expansion converges on the quadrature value
exact = averaged_force(300.0, config, PositionDistribution.UNIFORM)
print("\n# series order, F(300 nm) uniform, error vs quadrature")
for n in range(7):
    s = averaged_force_series(300.0, config, PositionDistribution.UNIFORM, n)
    print(n, f"{s:.6f}", f"{abs(s - exact):.2e}")

if showplot:
    import matplotlib.pyplot as plt

    for d, c in curves.items():
        plt.plot(c.a_nm, c.F_pN, label=d.value)
    plt.xlabel("a (nm)")
    plt.ylabel("F (pN)")
    plt.legend()
    plt.show()
