"""
Closed-form lateral Casimir force on a sphere above a sinusoidal corrugation.

For an ideal metal, with theta = 2 pi x0 / L and k = 2 pi / L,

    Fx = -3 F0(z0) (A/z0) [cos(theta) J1(kR) + (A/z0) sin(2 theta) J1(2kR)]

where F0 is the (negative) ideal plate-sphere force.  The leading minus
follows from integrating the atom-level force over the sphere; pass
``printed_sign=True`` to drop it.  Both conventions share the zeros,
periodicity and antisymmetry; they differ in which zero is stable.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .model import ExperimentConfig, SpherePose
from .specfun import bessel_j
from .vertical import force_ideal_plate_sphere

SCAN_SAMPLES = 4096
ROOT_TOL = 1e-6  # in units of L


class Stability(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class Equilibrium:
    x0: float
    stability: Stability
    restoring_stiffness: float  # -dFx/dx0, pN/nm

    def to_dict(self) -> dict:
        return {
            "x0_nm": self.x0,
            "stability": self.stability.value,
            "stiffness_pN_per_nm": self.restoring_stiffness,
        }


def pose_from_separation(a: float, x0: float, config: ExperimentConfig) -> SpherePose:
    """Pose whose height above the mean plane is a - Ap - As."""
    return SpherePose(x0=x0, z0=a - config.roughness_offset)


def _cos_sin_2pi(t):
    """cos(2 pi t) and sin(2 pi t) with quadrant-exact reduction (exact zeros at quarter periods)."""
    u = 4.0 * np.mod(np.asarray(t, dtype=float), 1.0)
    n = np.rint(u)
    r = (u - n) * (0.5 * np.pi)
    q = np.mod(n, 4).astype(int)
    c, s = np.cos(r), np.sin(r)
    cos_t = np.choose(q, [c, -s, -c, s])
    sin_t = np.choose(q, [s, c, -s, -c])
    return cos_t, sin_t


def _bessel_pair(config: ExperimentConfig) -> tuple[float, float]:
    kR = 2.0 * math.pi * config.sphere.radius_R / config.plate.period_L
    return bessel_j(1, kR), bessel_j(1, 2.0 * kR)


def lateral_force_terms(x0, z0: float, config: ExperimentConfig, printed_sign: bool = False):
    """First- and second-order terms of the lateral force (pN), returned separately."""
    if not z0 > 0.0:
        raise ValueError("z0 must be > 0")
    A, L = config.plate.amplitude_A, config.plate.period_L
    J1a, J1b = _bessel_pair(config)
    t = np.mod(np.asarray(x0, dtype=float), L) / L
    cos_1, _ = _cos_sin_2pi(t)
    _, sin_2 = _cos_sin_2pi(2.0 * t)
    sign = 1.0 if printed_sign else -1.0
    pre = sign * 3.0 * force_ideal_plate_sphere(z0, config.sphere.radius_R) * (A / z0)
    first = pre * cos_1 * J1a
    second = pre * (A / z0) * sin_2 * J1b
    if np.ndim(first) == 0:
        return float(first), float(second)
    return first, second


def lateral_force(
    pose: SpherePose,
    config: ExperimentConfig,
    include_second_order: bool = True,
    printed_sign: bool = False,
) -> float:
    first, second = lateral_force_terms(pose.x0, pose.z0, config, printed_sign)
    return first + second if include_second_order else first


def lateral_force_profile(x0, z0: float, config: ExperimentConfig, printed_sign: bool = False):
    """Vectorised lateral force over an array of x0 at fixed z0."""
    first, second = lateral_force_terms(x0, z0, config, printed_sign)
    return first + second


def harmonic_ratio(z0: float, config: ExperimentConfig) -> float:
    """Ratio of the second- to first-harmonic amplitudes, (A/z0) |J1(2kR) / J1(kR)|."""
    J1a, J1b = _bessel_pair(config)
    return config.plate.amplitude_A / z0 * abs(J1b / J1a)


def find_equilibria(
    z0: float,
    config: ExperimentConfig,
    samples: int = SCAN_SAMPLES,
    tol: float = ROOT_TOL,
    printed_sign: bool = False,
) -> list[Equilibrium]:
    """Zeros of the lateral force in [0, L), classified by the sign of -dFx/dx0.

    Sign changes on a uniform half-offset grid are refined by bisection to
    ``tol * L``.  Roots within that tolerance of L/4 or 3L/4, where the
    cosine factor vanishes exactly, are snapped to those points.
    """
    if not z0 > 0.0:
        raise ValueError("z0 must be > 0")
    if config.plate.amplitude_A == 0.0:
        raise ValueError("lateral force identically zero; no isolated equilibria")
    L = config.plate.period_L

    def f(x):
        return lateral_force_profile(x, z0, config, printed_sign)

    # half-offset grid keeps samples off the analytic zeros at L/4, 3L/4
    x = (np.arange(samples) + 0.5) * L / samples
    x = np.append(x, x[0] + L)
    y = f(x)
    roots = []
    for i in np.nonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)[0]:
        lo, hi, flo = x[i], x[i + 1], y[i]
        while hi - lo > tol * L:
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if np.sign(fm) == np.sign(flo):
                lo, flo = mid, fm
            else:
                hi = mid
        r = 0.5 * (lo + hi) % L
        for exact in (0.25 * L, 0.75 * L):
            if abs(r - exact) <= tol * L:
                r = exact
        roots.append(r)

    h = 1e-5 * L
    out = []
    for r in sorted(roots):
        stiffness = -(float(f(r + h)) - float(f(r - h))) / (2.0 * h)
        stab = Stability.STABLE if stiffness > 0.0 else Stability.UNSTABLE
        out.append(Equilibrium(float(r), stab, stiffness))
    return out


def lateral_map(z0: float, config: ExperimentConfig, steps: int = 200, printed_sign: bool = False) -> np.ndarray:
    """Rows (x0, z0, Fx) over one period, x0 = i L / steps."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x = np.arange(steps) * config.plate.period_L / steps
    F = lateral_force_profile(x, z0, config, printed_sign)
    return np.column_stack([x, np.full_like(x, z0), F])


def lateral_map_csv(rows: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x0_nm", "z0_nm", "Fx_pN"])
    for x0, z0, F in rows:
        w.writerow([repr(float(x0)), repr(float(z0)), repr(float(F))])
    return buf.getvalue()


def equilibria_json(eqs: list[Equilibrium], extra: dict | None = None) -> str:
    doc = {"equilibria": [e.to_dict() for e in eqs]}
    if extra:
        doc = {**extra, **doc}
    return json.dumps(doc, indent=2)
