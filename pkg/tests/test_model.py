import json
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from corrugated_casimir.model import (
    HBAR_C,
    CONFIG_KEYS,
    CorrugatedPlate,
    ExperimentConfig,
    MaterialModel,
    PhysicalConstants,
    SphereGeometry,
    SpherePose,
    conductivity_coefficients,
    default_experiment,
    load_config,
)


def test_default_experiment_values():
    cfg = default_experiment()
    assert cfg.plate.amplitude_A == 59.4
    assert cfg.plate.period_L == 1100.0
    assert cfg.plate.roughness_Ap == 4.7
    assert cfg.sphere.radius_R == 97300.0
    assert cfg.sphere.roughness_As == 5.0
    assert cfg.a0 == 148.0
    assert cfg.contact_offset_h == 30.0
    assert cfg.material.delta0 == pytest.approx(15.9155, abs=1e-4)
    assert cfg.material.plasma_wavelength == pytest.approx(100.0, rel=1e-15)


def test_coefficients_match_high_precision():
    mpmath.mp.dps = 40
    pi2 = mpmath.pi**2
    ref = [
        1,
        -4,
        mpmath.mpf(72) / 5,
        -mpmath.mpf(320) / 7 * (1 - pi2 / 210),
        -mpmath.mpf(400) / 3 * (1 - 163 * pi2 / 7350),
    ]
    for c, r in zip(conductivity_coefficients(), ref):
        assert c == pytest.approx(float(r), rel=1e-15)
    c3, c4 = conductivity_coefficients()[3:]
    assert c3 == pytest.approx(-43.565800, abs=1e-6)
    # closed form gives -104.149741..., not the -104.149750 quoted alongside it
    assert c4 == pytest.approx(-104.1497412, abs=1e-6)


def test_hbar_c_units():
    assert PhysicalConstants().hbar_c == 3.16153e-26
    assert PhysicalConstants().hbar_c_pn_nm2 == pytest.approx(HBAR_C)
    with pytest.raises(ValueError):
        PhysicalConstants(-1.0)


@pytest.mark.parametrize(
    "build",
    [
        lambda: CorrugatedPlate(10.0, 0.0),
        lambda: CorrugatedPlate(-1.0, 100.0),
        lambda: CorrugatedPlate(10.0, 100.0, -1.0),
        lambda: CorrugatedPlate(200.0, 100.0),
        lambda: SphereGeometry(0.0),
        lambda: SphereGeometry(10.0, -1.0),
        lambda: MaterialModel(-1.0),
        lambda: MaterialModel(coefficients=(1.0, 2.0)),
        lambda: SpherePose(0.0, 0.0),
    ],
)
def test_invariants_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_types_are_immutable():
    cfg = default_experiment()
    with pytest.raises(AttributeError):
        cfg.a0 = 1.0


def test_json_round_trip_is_exact(tmp_path):
    cfg = default_experiment()
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    back = load_config(path)
    assert back == cfg
    assert set(json.loads(cfg.to_json())) == set(CONFIG_KEYS)


@given(
    A=st.floats(0.0, 500.0),
    L=st.floats(600.0, 5000.0),
    R=st.floats(1.0, 1e6),
    delta0=st.floats(0.0, 50.0),
    ideal=st.booleans(),
)
def test_round_trip_property(A, L, R, delta0, ideal):
    cfg = ExperimentConfig(
        CorrugatedPlate(A, L, 1.5), SphereGeometry(R, 2.5), MaterialModel(delta0, ideal=ideal)
    )
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    assert ExperimentConfig.from_json(cfg.to_json()).digest() == cfg.digest()


def test_partial_config_overrides_defaults():
    cfg = ExperimentConfig.from_dict({"amplitude_nm": 0.0, "ideal_metal": True})
    assert cfg.plate.amplitude_A == 0.0
    assert cfg.material.ideal
    assert cfg.sphere.radius_R == 97300.0


def test_unknown_config_key_rejected():
    with pytest.raises(ValueError, match="unknown"):
        ExperimentConfig.from_dict({"amplitude": 1.0})


def test_surface_profile():
    plate = CorrugatedPlate(59.4, 1100.0)
    assert plate.surface(275.0) == pytest.approx(59.4)
    assert plate.surface(825.0) == pytest.approx(-59.4)
    assert abs(plate.surface(0.0)) < 1e-12
    assert math.isclose(plate.surface(275.0 + 1100.0), 59.4, rel_tol=1e-12)
