"""
Shared physical types for the sphere / corrugated-plate configuration.

Unit conventions
----------------
All lengths are stored in nanometres and all forces are reported in
piconewtons.  The only dimensional constant, hbar*c, is kept both in SI
(J m) and in the internal pN nm^2 system.

Config files are JSON objects with the keys listed in ``CONFIG_KEYS``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

# hbar*c in J m, fixed.
HBAR_C_SI = 3.16153e-26
# 1 J m = 1 N m^2 = 1e12 pN * 1e18 nm^2
HBAR_C = HBAR_C_SI * 1e30  # pN nm^2


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c: float = HBAR_C_SI

    def __post_init__(self) -> None:
        if not self.hbar_c > 0.0:
            raise ValueError("hbar_c must be > 0")

    @property
    def hbar_c_pn_nm2(self) -> float:
        return self.hbar_c * 1e30


def conductivity_coefficients() -> tuple[float, float, float, float, float]:
    """Return the default finite-conductivity series coefficients c0..c4."""
    pi2 = math.pi**2
    return (
        1.0,
        -4.0,
        72.0 / 5.0,
        -(320.0 / 7.0) * (1.0 - pi2 / 210.0),
        -(400.0 / 3.0) * (1.0 - 163.0 * pi2 / 7350.0),
    )


DEFAULT_COEFFICIENTS = conductivity_coefficients()


@dataclass(frozen=True)
class CorrugatedPlate:
    """Plate with surface z = A sin(2 pi x / L) and stochastic roughness Ap (nm)."""

    amplitude_A: float
    period_L: float
    roughness_Ap: float = 0.0

    def __post_init__(self) -> None:
        if not self.period_L > 0.0:
            raise ValueError("period_L must be > 0")
        if not self.amplitude_A >= 0.0:
            raise ValueError("amplitude_A must be >= 0")
        if not self.roughness_Ap >= 0.0:
            raise ValueError("roughness_Ap must be >= 0")
        if not self.amplitude_A < self.period_L:
            raise ValueError("amplitude_A must be smaller than period_L")

    def surface(self, x):
        return self.amplitude_A * np.sin(2.0 * np.pi * np.asarray(x, dtype=float) / self.period_L)


@dataclass(frozen=True)
class SphereGeometry:
    radius_R: float
    roughness_As: float = 0.0

    def __post_init__(self) -> None:
        if not self.radius_R > 0.0:
            raise ValueError("radius_R must be > 0")
        if not self.roughness_As >= 0.0:
            raise ValueError("roughness_As must be >= 0")


@dataclass(frozen=True)
class MaterialModel:
    """Finite-conductivity model: factor = sum_i c_i (delta0/d)^i.

    With ``ideal=True`` the factor is exactly 1 whatever the coefficients.
    """

    delta0: float = 100.0 / (2.0 * math.pi)
    coefficients: tuple[float, ...] = DEFAULT_COEFFICIENTS
    ideal: bool = False

    def __post_init__(self) -> None:
        if not self.delta0 >= 0.0:
            raise ValueError("delta0 must be >= 0")
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) != 5:
            raise ValueError("exactly five coefficients c0..c4 are required")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def plasma_wavelength(self) -> float:
        return 2.0 * math.pi * self.delta0


@dataclass(frozen=True)
class SpherePose:
    """Position of the sphere bottom: lateral x0 and height z0 above the mean plane (nm).

    y0 is not stored; the corrugation is uniaxial.
    """

    x0: float
    z0: float

    def __post_init__(self) -> None:
        if not self.z0 > 0.0:
            raise ValueError("z0 must be > 0")


@dataclass(frozen=True)
class ExperimentConfig:
    plate: CorrugatedPlate
    sphere: SphereGeometry
    material: MaterialModel = field(default_factory=MaterialModel)
    a0: float = 148.0
    contact_offset_h: float = 30.0

    def __post_init__(self) -> None:
        if not self.a0 > 0.0:
            raise ValueError("a0 must be > 0")
        if not self.contact_offset_h >= 0.0:
            raise ValueError("contact_offset_h must be >= 0")

    @property
    def roughness_offset(self) -> float:
        """A_p + A_s, the constant separation lost to stochastic roughness."""
        return self.plate.roughness_Ap + self.sphere.roughness_As

    def with_amplitude(self, amplitude: float) -> "ExperimentConfig":
        plate = CorrugatedPlate(amplitude, self.plate.period_L, self.plate.roughness_Ap)
        return ExperimentConfig(plate, self.sphere, self.material, self.a0, self.contact_offset_h)

    def with_material(self, material: MaterialModel) -> "ExperimentConfig":
        return ExperimentConfig(self.plate, self.sphere, material, self.a0, self.contact_offset_h)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "amplitude_nm": self.plate.amplitude_A,
            "period_nm": self.plate.period_L,
            "plate_roughness_nm": self.plate.roughness_Ap,
            "sphere_roughness_nm": self.sphere.roughness_As,
            "radius_nm": self.sphere.radius_R,
            "delta0_nm": self.material.delta0,
            "ideal_metal": self.material.ideal,
            "a0_nm": self.a0,
            "contact_offset_nm": self.contact_offset_h,
            "coefficients": list(self.material.coefficients),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], base: "ExperimentConfig | None" = None) -> "ExperimentConfig":
        """Build a config from a (possibly partial) mapping; missing keys fall back to ``base``."""
        unknown = set(data) - set(CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        merged = (base or default_experiment()).to_dict()
        merged.update(data)
        plate = CorrugatedPlate(
            float(merged["amplitude_nm"]),
            float(merged["period_nm"]),
            float(merged["plate_roughness_nm"]),
        )
        sphere = SphereGeometry(float(merged["radius_nm"]), float(merged["sphere_roughness_nm"]))
        material = MaterialModel(
            float(merged["delta0_nm"]),
            tuple(merged["coefficients"]),
            bool(merged["ideal_metal"]),
        )
        return cls(plate, sphere, material, float(merged["a0_nm"]), float(merged["contact_offset_nm"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object")
        return cls.from_dict(data)

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


CONFIG_KEYS = (
    "amplitude_nm",
    "period_nm",
    "plate_roughness_nm",
    "sphere_roughness_nm",
    "radius_nm",
    "delta0_nm",
    "ideal_metal",
    "a0_nm",
    "contact_offset_nm",
    "coefficients",
)


def default_experiment() -> ExperimentConfig:
    """Al-coated sphere above a corrugated plate, default experimental parameters (nm)."""
    return ExperimentConfig(
        plate=CorrugatedPlate(amplitude_A=59.4, period_L=1100.0, roughness_Ap=4.7),
        sphere=SphereGeometry(radius_R=97300.0, roughness_As=5.0),
        material=MaterialModel(delta0=100.0 / (2.0 * math.pi)),
        a0=148.0,
        contact_offset_h=30.0,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    return ExperimentConfig.from_json(Path(path).read_text())

