"""Vertical and lateral Casimir force for a sphere above a sinusoidally corrugated plate."""

from .analysis import FitReport, MeasurementSet, compare_distributions, load_measurements, rms_deviation
from .lateral import Equilibrium, Stability, find_equilibria, harmonic_ratio, lateral_force, pose_from_separation
from .model import (
    HBAR_C,
    CorrugatedPlate,
    ExperimentConfig,
    MaterialModel,
    PhysicalConstants,
    SphereGeometry,
    SpherePose,
    default_experiment,
    load_config,
)
from .oracle import AdditiveConstants, OracleReport, lateral_force_numeric, prefactor_cancellation_check
from .specfun import QuadratureError, QuadratureSpec, bessel_j, integrate_1d, radial_bessel_integral
from .vertical import (
    ContactError,
    ForceCurve,
    PositionDistribution,
    averaged_force,
    averaged_force_series,
    conductivity_factor,
    density,
    force_curve,
    force_ideal_plate_sphere,
    force_plate_sphere,
    gap,
)

__version__ = "0.1.0"
