"""
Vertical Casimir force between a sphere and a corrugated plate.

The plate-sphere force with finite-conductivity corrections is averaged
over one corrugation period, weighted by the probability density of the
sphere's lateral position.  The average is computed by adaptive
quadrature over the support of the density, split where the density has
kinks; a Taylor series in A/(a - Ap - As) is available as a cross-check.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .model import HBAR_C, CorrugatedPlate, ExperimentConfig, MaterialModel, SphereGeometry
from .specfun import QuadratureSpec, integrate_1d, integrate_periodic

VALIDITY_RANGE = (169.5, 400.0)
MAX_SERIES_ORDER = 6


class ContactError(ValueError):
    """The sphere touches or penetrates the plate."""


class PositionDistribution(enum.Enum):
    UNIFORM = "uniform"
    HALF_UNIFORM = "half"
    TRIANGULAR = "triangular"
    DELTA_AT_MAXIMUM = "peak"

    @classmethod
    def from_name(cls, name: str) -> "PositionDistribution":
        key = name.strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown distribution {name!r}; choose from {[m.value for m in cls]}")


DISTRIBUTIONS = tuple(PositionDistribution)


def gap(a, x, plate: CorrugatedPlate, sphere: SphereGeometry):
    """Local separation d(a, x) = a - Ap - As - A sin(2 pi x / L)."""
    d = a - plate.roughness_Ap - sphere.roughness_As - plate.surface(x)
    if np.any(d <= 0.0):
        raise ContactError(f"non-positive gap at separation a={a!r}: sphere touches the plate")
    return float(d) if np.ndim(d) == 0 else d


def force_ideal_plate_sphere(d, R: float):
    """Perfect-metal proximity force -pi^3 R hbar c / (360 d^3), in pN for d, R in nm."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError("separation d must be > 0")
    if not R > 0.0:
        raise ValueError("radius R must be > 0")
    f = -(math.pi**3) * R * HBAR_C / (360.0 * d**3)
    return float(f) if f.ndim == 0 else f


def conductivity_factor(d, material: MaterialModel):
    """Finite-conductivity correction sum_i c_i (delta0/d)^i.

    Warns below the plasma wavelength, where the expansion is not trusted.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError("separation d must be > 0")
    if material.ideal or material.delta0 == 0.0:
        out = np.ones_like(d)
        return float(out) if out.ndim == 0 else out
    if np.any(d < material.plasma_wavelength * (1.0 - 1e-12)):
        warnings.warn(
            f"separation below plasma wavelength {material.plasma_wavelength:.4g} nm; "
            "conductivity series outside its validity range",
            RuntimeWarning,
            stacklevel=2,
        )
    t = material.delta0 / d
    out = np.zeros_like(d)
    for c in reversed(material.coefficients):
        out = out * t + c
    return float(out) if out.ndim == 0 else out


def force_plate_sphere(d, sphere: SphereGeometry, material: MaterialModel):
    return force_ideal_plate_sphere(d, sphere.radius_R) * conductivity_factor(d, material)


def density(dist: PositionDistribution, x, L: float):
    """Probability density of the sphere position over one period (right-continuous)."""
    if not L > 0.0:
        raise ValueError("period L must be > 0")
    x = np.mod(np.asarray(x, dtype=float), L)
    if dist is PositionDistribution.UNIFORM:
        out = np.full_like(x, 1.0 / L)
    elif dist is PositionDistribution.HALF_UNIFORM:
        out = np.where(x < 0.5 * L, 2.0 / L, 0.0)
    elif dist is PositionDistribution.TRIANGULAR:
        k = 16.0 / (L * L)
        out = np.where(x < 0.25 * L, k * x, np.where(x < 0.5 * L, k * (0.5 * L - x), 0.0))
    else:
        raise ValueError(
            "DELTA_AT_MAXIMUM is a point mass at x = L/4 and has no density; "
            "use averaged_force, which evaluates it directly"
        )
    return float(out) if out.ndim == 0 else out


def support_pieces(dist: PositionDistribution, L: float) -> list[tuple[float, float]]:
    """Subintervals of [0, L) on which the density is smooth and nonzero."""
    if dist is PositionDistribution.UNIFORM:
        return [(0.0, 0.25 * L), (0.25 * L, L)]
    if dist is PositionDistribution.HALF_UNIFORM:
        return [(0.0, 0.25 * L), (0.25 * L, 0.5 * L)]
    if dist is PositionDistribution.TRIANGULAR:
        return [(0.0, 0.25 * L), (0.25 * L, 0.5 * L)]
    return []


def _min_gap(a: float, config: ExperimentConfig) -> float:
    # every support contains the crest at x = L/4
    return a - config.roughness_offset - config.plate.amplitude_A


DEFAULT_SPEC = QuadratureSpec(rel_tol=1e-12)


def averaged_force(
    a: float,
    config: ExperimentConfig,
    dist: PositionDistribution,
    spec: QuadratureSpec | None = None,
    method: str = "adaptive",
) -> float:
    """Period average of the plate-sphere force weighted by ``dist``.

    ``method="periodic"`` uses the trapezoid rule over a full period and is
    only valid for the uniform density.
    """
    if _min_gap(a, config) <= 0.0:
        raise ContactError(f"sphere touches the corrugation crest at a={a!r} nm")
    plate, sphere, material = config.plate, config.sphere, config.material
    L = plate.period_L

    def f_ps(x):
        return force_plate_sphere(gap(a, x, plate, sphere), sphere, material)

    if dist is PositionDistribution.DELTA_AT_MAXIMUM:
        return float(f_ps(0.25 * L))
    if method == "periodic":
        if dist is not PositionDistribution.UNIFORM:
            raise ValueError("periodic rule applies to the uniform density only")
        return integrate_periodic(f_ps, 0.0, L, n=512) / L
    if method != "adaptive":
        raise ValueError(f"unknown method {method!r}")

    spec = spec or DEFAULT_SPEC
    total = 0.0
    for lo, hi in support_pieces(dist, L):
        rho = _piece_density(dist, L, lo, hi)
        val, _ = integrate_1d(lambda x: rho(x) * f_ps(x), lo, hi, spec)
        total += val
    return total


def _piece_density(dist: PositionDistribution, L: float, lo: float, hi: float):
    # Analytic form of the density on one smooth piece, free of the
    # right-continuous switch at the piece's upper end.
    if dist is PositionDistribution.UNIFORM:
        return lambda x: np.full_like(x, 1.0 / L)
    if dist is PositionDistribution.HALF_UNIFORM:
        return lambda x: np.full_like(x, 2.0 / L)
    k = 16.0 / (L * L)
    if hi <= 0.25 * L:
        return lambda x: k * x
    return lambda x: k * (0.5 * L - x)


# ---------------------------------------------------------------------------
# Series expansion in the corrugation amplitude
# ---------------------------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(64)


def sine_moment(dist: PositionDistribution, n: int, L: float = 1.0) -> float:
    """E[sin^n(2 pi x / L)] under ``dist``; independent of L."""
    if n == 0:
        return 1.0
    if dist is PositionDistribution.DELTA_AT_MAXIMUM:
        return 1.0
    if dist is PositionDistribution.UNIFORM:
        if n % 2:
            return 0.0
        return math.comb(n, n // 2) / 2.0**n
    total = 0.0
    for lo, hi in support_pieces(dist, L):
        x = 0.5 * (hi + lo) + 0.5 * (hi - lo) * _GL_X
        w = 0.5 * (hi - lo) * _GL_W
        total += float(np.sum(w * _piece_density(dist, L, lo, hi)(x) * np.sin(2 * np.pi * x / L) ** n))
    return total


def averaged_force_series(a: float, config: ExperimentConfig, dist: PositionDistribution, order: int) -> float:
    """Taylor expansion of the period average in eps = A / (a - Ap - As), truncated at eps**order."""
    if not 0 <= order <= MAX_SERIES_ORDER:
        raise ValueError(f"order must be in 0..{MAX_SERIES_ORDER}")
    d0 = a - config.roughness_offset
    if d0 <= 0.0:
        raise ContactError(f"non-positive mean gap at a={a!r}")
    eps = config.plate.amplitude_A / d0
    if eps >= 1.0:
        raise ValueError(f"expansion parameter A/(a-Ap-As)={eps:.3g} must be < 1")
    material = config.material
    if material.ideal or material.delta0 == 0.0:
        coeffs = (1.0,)
    else:
        coeffs = material.coefficients
    moments = [sine_moment(dist, n) for n in range(order + 1)]
    total = 0.0
    for i, c in enumerate(coeffs):
        p = 3 + i
        # (1 - eps s)^(-p) = sum_n C(p+n-1, n) (eps s)^n
        bracket = sum(comb(p + n - 1, n) * eps**n * moments[n] for n in range(order + 1))
        total += c * (material.delta0 / d0) ** i * bracket
    return force_ideal_plate_sphere(d0, config.sphere.radius_R) * total


# ---------------------------------------------------------------------------
# Force curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForceCurve:
    a_nm: np.ndarray
    F_pN: np.ndarray
    distribution: PositionDistribution
    config: ExperimentConfig
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        a = np.asarray(self.a_nm, dtype=float)
        F = np.asarray(self.F_pN, dtype=float)
        if a.shape != F.shape or a.ndim != 1:
            raise ValueError("a_nm and F_pN must be 1-D arrays of equal length")
        if np.any(np.diff(a) <= 0.0):
            raise ValueError("separations must be strictly increasing")
        object.__setattr__(self, "a_nm", a)
        object.__setattr__(self, "F_pN", F)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# distribution={self.distribution.value} config={self.config.digest()}\n")
        buf.write(f"# config_json={json.dumps(self.config.to_dict(), sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a_nm", "F_pN"])
        for a, F in zip(self.a_nm, self.F_pN):
            w.writerow([repr(float(a)), repr(float(F))])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": {
                "distribution": self.distribution.value,
                "config_hash": self.config.digest(),
                "config": self.config.to_dict(),
                **self.metadata,
            },
            "points": [{"a_nm": float(a), "F_pN": float(F)} for a, F in zip(self.a_nm, self.F_pN)],
        }
        return json.dumps(doc, indent=2)


def force_curve(
    config: ExperimentConfig,
    dist: PositionDistribution,
    a_min: float = VALIDITY_RANGE[0],
    a_max: float = VALIDITY_RANGE[1],
    steps: int = 62,
    spec: QuadratureSpec | None = None,
) -> ForceCurve:
    """Averaged force on ``steps`` evenly spaced separations in [a_min, a_max]."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps > 1 and not a_max > a_min:
        raise ValueError("a_max must exceed a_min")
    lo, hi = VALIDITY_RANGE
    if a_min < lo or a_max > hi:
        warnings.warn(
            f"curve range [{a_min}, {a_max}] nm leaves the perturbative window [{lo}, {hi}] nm",
            RuntimeWarning,
            stacklevel=2,
        )
    a = np.linspace(a_min, a_max, steps) if steps > 1 else np.array([float(a_min)])
    F = np.array([averaged_force(float(x), config, dist, spec) for x in a])
    return ForceCurve(a, F, dist, config, {"a_min_nm": float(a_min), "a_max_nm": float(a_max), "steps": steps})
