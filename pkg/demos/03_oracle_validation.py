#!/usr/bin/env python3
# Closed-form lateral force against the nested (rho, z, phi) quadrature.
# Takes roughly 10 s per height.

from corrugated_casimir import default_experiment
from corrugated_casimir.oracle import reports_table, validation_grid

config = default_experiment()

print("# amplitude scan at z0 = 300 nm: rel_diff against the first-order term shrinks with A")
reports = validation_grid(
    config,
    z0_values=(300.0,),
    x0_fractions=(0.0, 0.125, 0.375),
    amplitude_scales=(1.0, 0.5, 0.25, 0.125, 0.01),
)
print(reports_table(reports))
