"""
Comparison of theory curves with measured force-distance data.

The figure of merit is the unweighted root-mean-square deviation between
theory and measurement over an inclusive separation window; the global
uncertainties are carried as metadata only.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .model import ExperimentConfig
from .specfun import QuadratureSpec
from .vertical import DISTRIBUTIONS, VALIDITY_RANGE, PositionDistribution, averaged_force


@dataclass(frozen=True)
class MeasurementSet:
    a: np.ndarray  # nm
    F: np.ndarray  # pN
    sigma_F: float = 5.0
    sigma_a: float = 5.0

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=float).ravel()
        F = np.asarray(self.F, dtype=float).ravel()
        if a.size == 0:
            raise ValueError("measurement set is empty")
        if a.shape != F.shape:
            raise ValueError("separation and force columns differ in length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(F))):
            raise ValueError("measurements must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "F", F)

    def __len__(self) -> int:
        return self.a.size

    def in_range(self, a_range: tuple[float, float]) -> np.ndarray:
        lo, hi = a_range
        return (self.a >= lo) & (self.a <= hi)


def _parse_float(text: str, lineno: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"line {lineno}: cannot parse {column} value {text.strip()!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"line {lineno}: non-finite {column} value {text.strip()!r}")
    return value


def load_measurements(path: str | Path, sigma_F: float = 5.0, sigma_a: float = 5.0) -> MeasurementSet:
    """Read a two-column ``a,F`` CSV (nm, pN).

    An optional ``a_nm,F_pN`` header is accepted, as are blank lines and
    lines starting with ``#``.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"measurement file not found: {path}")
    a_vals, F_vals = [], []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in row]
            if cells == ["a_nm", "F_pN"]:
                continue
            if len(cells) != 2:
                raise ValueError(f"line {lineno}: expected 2 columns, got {len(cells)}")
            a = _parse_float(cells[0], lineno, "separation")
            F = _parse_float(cells[1], lineno, "force")
            if a <= 0.0:
                raise ValueError(f"line {lineno}: separation must be > 0")
            a_vals.append(a)
            F_vals.append(F)
    if not a_vals:
        raise ValueError(f"no measurements in {path}")
    return MeasurementSet(np.array(a_vals), np.array(F_vals), sigma_F, sigma_a)


def rms_deviation(
    theory: Callable[[float], float],
    data: MeasurementSet,
    a_range: tuple[float, float] = VALIDITY_RANGE,
) -> float:
    """sqrt(mean((theory(a_i) - F_i)^2)) over points with a_min <= a_i <= a_max."""
    mask = data.in_range(a_range)
    if not np.any(mask):
        raise ValueError(f"no data points in range [{a_range[0]}, {a_range[1]}] nm")
    predicted = np.array([theory(float(a)) for a in data.a[mask]])
    resid = predicted - data.F[mask]
    return float(np.sqrt(np.mean(resid * resid)))


@dataclass(frozen=True)
class FitReport:
    sigma: dict[PositionDistribution, float]
    n_points: int
    a_range: tuple[float, float]
    best: PositionDistribution
    config_hash: str = ""
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "sigma_pN": {d.value: s for d, s in self.sigma.items()},
            "n_points": self.n_points,
            "a_range_nm": list(self.a_range),
            "best": self.best.value,
            "config_hash": self.config_hash,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [
            f"points used: {self.n_points} in [{self.a_range[0]}, {self.a_range[1]}] nm",
            f"{'distribution':<12} {'sigma_pN':>12}",
        ]
        for d, s in self.sigma.items():
            mark = "  <- best" if d is self.best else ""
            lines.append(f"{d.value:<12} {s:12.4f}{mark}")
        return "\n".join(lines) + "\n"


def compare_distributions(
    data: MeasurementSet,
    config: ExperimentConfig,
    a_range: tuple[float, float] = VALIDITY_RANGE,
    spec: QuadratureSpec | None = None,
) -> FitReport:
    """RMS deviation of every position distribution; ties go to the earlier distribution."""
    sigma = {}
    for dist in DISTRIBUTIONS:
        sigma[dist] = rms_deviation(lambda a, d=dist: averaged_force(a, config, d, spec), data, a_range)
    best = min(DISTRIBUTIONS, key=lambda d: sigma[d])  # min keeps the first of equal keys
    return FitReport(
        sigma=sigma,
        n_points=int(np.count_nonzero(data.in_range(a_range))),
        a_range=(float(a_range[0]), float(a_range[1])),
        best=best,
        config_hash=config.digest(),
        config=config.to_dict(),
    )


def synthetic_measurements(
    config: ExperimentConfig,
    dist: PositionDistribution,
    a: np.ndarray,
    noise_pN: float = 0.0,
    rng: np.random.Generator | None = None,
) -> MeasurementSet:
    """Measurements generated from a theory curve with optional Gaussian force noise."""
    a = np.asarray(a, dtype=float)
    F = np.array([averaged_force(float(x), config, dist) for x in a])
    if noise_pN > 0.0:
        rng = rng or np.random.default_rng()
        F = F + rng.normal(0.0, noise_pN, size=F.shape)
    return MeasurementSet(a, F)
