"""
Brute-force checks of the closed-form lateral force.

The lateral force on the sphere is written as a cylindrical triple
integral (rho, z, phi) over the region below the sphere's lower
hemisphere, after the additive-summation constants have cancelled.
``lateral_force_numeric`` evaluates that integral with three nested
adaptive quadratures and no analytic shortcuts; the closed form in
:mod:`corrugated_casimir.lateral` is compared against it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .lateral import lateral_force_terms
from .model import HBAR_C, CorrugatedPlate, ExperimentConfig, SpherePose
from .specfun import QuadratureSpec, integrate_1d

REL_DIFF_FLOOR = 1e-12  # pN
ORACLE_SPEC = QuadratureSpec(rel_tol=1e-8, abs_tol=0.0, max_subdivisions=200_000)


@dataclass(frozen=True)
class AdditiveConstants:
    """Pairwise-potential constant C and atomic densities of plate and sphere."""

    C: float = 1.0
    n_p: float = 1.0
    n_s: float = 1.0
    hbar_c: float = HBAR_C

    def __post_init__(self) -> None:
        for name in ("C", "n_p", "n_s", "hbar_c"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0")

    @property
    def K(self) -> float:
        """Normalisation matching the additive and exact parallel-plate results."""
        return 24.0 * self.C * self.n_p * self.n_s / (math.pi * self.hbar_c)


def atom_lateral_force(
    xA,
    zA: float,
    plate: CorrugatedPlate,
    consts: AdditiveConstants,
    include_second_order: bool = True,
):
    """Lateral force on one sphere atom from the whole corrugated plate, to second order in A/zA."""
    A, L = plate.amplitude_A, plate.period_L
    if not zA > A:
        raise ValueError("atom must lie above the corrugation crests (zA > A)")
    pre = 4.0 * math.pi**2 * consts.n_p * consts.C / (5.0 * zA**5) * (A / zA) * (zA / L)
    theta = 2.0 * np.pi * np.asarray(xA, dtype=float) / L
    bracket = np.cos(theta)
    if include_second_order:
        bracket = bracket + 2.5 * (A / zA) * np.sin(2.0 * theta)
    out = pre * bracket
    return float(out) if np.ndim(out) == 0 else out


def prefactor_cancellation_check(consts: AdditiveConstants) -> float:
    """(n_s/K)(4 pi^2 n_p C / 5) divided by pi^3 hbar c / 30; identically 1."""
    lhs = consts.n_s / consts.K * (4.0 * math.pi**2 * consts.n_p * consts.C / 5.0)
    return lhs / (math.pi**3 * consts.hbar_c / 30.0)


class ZIntegral(NamedTuple):
    exact: float
    truncated: float
    truncation_rel_error: float


def z_integral_closed_form(z0: float, h: float, power: int) -> ZIntegral:
    """int_0^h dz / (z0 + z)^p, together with its lowest-order truncation z0^(1-p)/(p-1)."""
    if power not in (5, 6):
        raise ValueError("power must be 5 or 6")
    if not z0 > 0.0:
        raise ValueError("z0 must be > 0")
    if not h >= 0.0:
        raise ValueError("h must be >= 0")
    q = power - 1
    truncated = z0 ** (-q) / q
    exact = (z0 ** (-q) - (z0 + h) ** (-q)) / q
    rel = abs(truncated - exact) / exact if exact > 0.0 else math.inf
    return ZIntegral(exact, truncated, rel)


def _cap_height(rho, R: float):
    # R - sqrt(R^2 - rho^2) without cancellation
    rho = np.asarray(rho, dtype=float)
    return rho * rho / (R + np.sqrt(np.maximum(R * R - rho * rho, 0.0)))


@lru_cache(maxsize=256)
def _radial_integral(
    z0: float, R: float, wavenumber: float, power: int, rel_tol: float, abs_tol: float, max_sub: int
) -> tuple[float, float]:
    """int_0^R rho drho int_0^h(rho) dz (z0+z)^-p int_0^2pi dphi cos(k rho cos phi), nested."""
    outer = QuadratureSpec(rel_tol, abs_tol, max_sub)
    middle = outer.tighter(10.0)
    # the phi integral is bounded by 2 pi; give it an absolute floor on that scale
    inner = QuadratureSpec(rel_tol / 100.0, 2.0 * math.pi * rel_tol / 100.0, max_sub)

    def z_part(rho: float) -> float:
        h = float(_cap_height(rho, R))
        if h == 0.0:
            return 0.0
        val, _ = integrate_1d(lambda z: (z0 + z) ** (-power), 0.0, h, middle)
        return val

    def phi_part(rho: float) -> float:
        q = wavenumber * rho
        n_panels = max(1, int(q / math.pi))
        pts = np.linspace(0.0, 2.0 * math.pi, n_panels + 1)[1:-1]
        val, _ = integrate_1d(lambda phi: np.cos(q * np.cos(phi)), 0.0, 2.0 * math.pi, inner, points=pts)
        return val

    def integrand(rho: np.ndarray) -> np.ndarray:
        return np.array([r * z_part(r) * phi_part(r) for r in rho])

    # panels between successive zeros of the oscillation, spacing pi / k
    step = math.pi / wavenumber
    pts = np.arange(step, R, step)
    return integrate_1d(integrand, 0.0, R, outer, points=pts)


def lateral_force_numeric(
    pose: SpherePose, config: ExperimentConfig, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """Lateral force from the nested triple integral; returns ``(value_pN, error_estimate_pN)``."""
    spec = spec or ORACLE_SPEC
    z0 = pose.z0
    A, L, R = config.plate.amplitude_A, config.plate.period_L, config.sphere.radius_R
    k = 2.0 * math.pi / L
    args = (spec.rel_tol, spec.abs_tol, int(spec.max_subdivisions))
    I5, e5 = _radial_integral(float(z0), float(R), k, 5, *args)
    I6, e6 = _radial_integral(float(z0), float(R), 2.0 * k, 6, *args)
    theta = 2.0 * math.pi * (pose.x0 % L) / L
    pre = math.pi**3 * HBAR_C / 30.0 * (A / L)
    c, s = math.cos(theta), math.sin(2.0 * theta)
    value = pre * (c * I5 + 2.5 * A * s * I6)
    err = abs(pre) * (abs(c) * e5 + 2.5 * A * abs(s) * e6)
    return value, err


@dataclass(frozen=True)
class OracleReport:
    x0: float
    z0: float
    amplitude: float
    closed_form: float  # first-order closed-form term
    closed_form_full: float
    numeric: float
    rel_diff: float
    rel_diff_full: float
    quadrature_error_estimate: float

    def to_dict(self) -> dict:
        return asdict(self)


def _rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), REL_DIFF_FLOOR)


def compare_closed_form(
    pose: SpherePose, config: ExperimentConfig, spec: QuadratureSpec | None = None
) -> OracleReport:
    numeric, err = lateral_force_numeric(pose, config, spec)
    first, second = lateral_force_terms(pose.x0, pose.z0, config)
    full = first + second
    return OracleReport(
        x0=pose.x0,
        z0=pose.z0,
        amplitude=config.plate.amplitude_A,
        closed_form=first,
        closed_form_full=full,
        numeric=numeric,
        rel_diff=_rel_diff(first, numeric),
        rel_diff_full=_rel_diff(full, numeric),
        quadrature_error_estimate=err,
    )


def validation_grid(
    config: ExperimentConfig,
    z0_values: Sequence[float] = (200.0, 300.0, 400.0),
    x0_fractions: Sequence[float] = (0.0, 0.125, 0.375),
    amplitude_scales: Sequence[float] = (1.0, 0.01),
    spec: QuadratureSpec | None = None,
) -> list[OracleReport]:
    """Oracle reports over z0 x (x0 / L) x (amplitude scale); scales multiply the config's A."""
    L = config.plate.period_L
    reports = []
    for scale in amplitude_scales:
        cfg = config.with_amplitude(config.plate.amplitude_A * scale)
        for z0 in z0_values:
            for frac in x0_fractions:
                reports.append(compare_closed_form(SpherePose(frac * L, z0), cfg, spec))
    return reports


def reports_json(reports: Sequence[OracleReport]) -> str:
    return json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2)


def reports_table(reports: Sequence[OracleReport]) -> str:
    head = f"{'A_nm':>10} {'z0_nm':>8} {'x0_nm':>9} {'closed_1st_pN':>15} {'numeric_pN':>15} {'rel_diff':>10} {'rel_diff_full':>13}"
    lines = [head, "-" * len(head)]
    for r in reports:
        lines.append(
            f"{r.amplitude:10.4g} {r.z0:8.1f} {r.x0:9.2f} {r.closed_form:15.6e} "
            f"{r.numeric:15.6e} {r.rel_diff:10.3e} {r.rel_diff_full:13.3e}"
        )
    return "\n".join(lines) + "\n"
