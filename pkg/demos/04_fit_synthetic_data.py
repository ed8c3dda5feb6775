#!/usr/bin/env python3
# RMS deviation of each distribution from noisy synthetic data.
# Replace `data` with load_measurements("measured.csv") to use a real dataset.

import numpy as np

from corrugated_casimir import compare_distributions, default_experiment
from corrugated_casimir.analysis import synthetic_measurements
from corrugated_casimir.vertical import PositionDistribution

config = default_experiment()
rng = np.random.default_rng(1)
a = np.linspace(169.5, 400.0, 62)

for truth in PositionDistribution:
    data = synthetic_measurements(config, truth, a, noise_pN=5.0, rng=rng)
    report = compare_distributions(data, config)
    print(f"generated from {truth.value}:")
    print(report.to_table())
