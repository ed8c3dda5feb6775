#!/usr/bin/env python3
# Lateral force over one corrugation period, its zeros and their stability.

import numpy as np

from corrugated_casimir import default_experiment, find_equilibria, harmonic_ratio
from corrugated_casimir.lateral import lateral_map

config = default_experiment()
L = config.plate.period_L

for z0 in (150.0, 200.0, 300.0, 400.0):
    rows = lateral_map(z0, config, steps=8)
    print(f"z0 = {z0:5.1f} nm   second/first harmonic = {harmonic_ratio(z0, config):.3f}")
    for x0, _, F in rows:
        print(f"   x0 = {x0:7.2f} nm   Fx = {F:+.5f} pN")
    for eq in find_equilibria(z0, config):
        print(f"   equilibrium x0 = {eq.x0:7.2f} nm  {eq.stability.value:8s} k = {eq.restoring_stiffness:+.3e} pN/nm")

# the sign of J1(2 pi R / L) decides which zero is stable; R is only known to +/- 250 nm
from dataclasses import replace

print("\n# stability of the crest (x0 = L/4) as R varies within its uncertainty")
for dR in np.linspace(-250.0, 250.0, 11):
    cfg = replace(config, sphere=replace(config.sphere, radius_R=config.sphere.radius_R + dR))
    crest = [e for e in find_equilibria(200.0, cfg) if e.x0 == L / 4][0]
    print(f"R = {cfg.sphere.radius_R:8.1f} nm  crest is {crest.stability.value}")
