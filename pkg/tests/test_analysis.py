import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corrugated_casimir.analysis import (
    MeasurementSet,
    compare_distributions,
    load_measurements,
    rms_deviation,
    synthetic_measurements,
)
from corrugated_casimir.vertical import DISTRIBUTIONS, PositionDistribution as PD, averaged_force


def test_load_two_rows(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("200,-30\n300,-12\n")
    data = load_measurements(p)
    assert len(data) == 2
    assert data.a.tolist() == [200.0, 300.0]
    assert data.F.tolist() == [-30.0, -12.0]
    assert data.sigma_F == 5.0 and data.sigma_a == 5.0


def test_load_header_comments_blank_lines(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("# produced by hand\na_nm,F_pN\n\n200, -30\n 300 ,-12\n")
    assert len(load_measurements(p)) == 2


def test_load_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError, match="no measurements"):
        load_measurements(empty)
    bad = tmp_path / "bad.csv"
    bad.write_text("abc,1\n")
    with pytest.raises(ValueError, match="line 1"):
        load_measurements(bad)
    cols = tmp_path / "cols.csv"
    cols.write_text("200,1\n300,1,2\n")
    with pytest.raises(ValueError, match="line 2"):
        load_measurements(cols)
    inf = tmp_path / "inf.csv"
    inf.write_text("200,inf\n")
    with pytest.raises(ValueError, match="line 1"):
        load_measurements(inf)
    neg = tmp_path / "neg.csv"
    neg.write_text("200,1\n-5,1\n")
    with pytest.raises(ValueError, match="line 2"):
        load_measurements(neg)
    with pytest.raises(FileNotFoundError):
        load_measurements(tmp_path / "missing.csv")


def test_duplicates_allowed():
    data = MeasurementSet([200.0, 200.0], [-30.0, -31.0])
    assert len(data) == 2


def test_rms_exact_and_offset():
    a = np.linspace(170, 400, 20)
    F = -1e6 / a**2
    data = MeasurementSet(a, F)
    table = dict(zip(a.tolist(), F.tolist()))
    assert rms_deviation(lambda x: table[x], data) == 0.0
    assert rms_deviation(lambda x: table[x] + 2.5, data) == pytest.approx(2.5, rel=1e-14)


def test_rms_range_is_inclusive():
    data = MeasurementSet([169.5, 300.0, 400.0, 401.0], [1.0, 1.0, 1.0, 100.0])
    assert rms_deviation(lambda a: 0.0, data, (169.5, 400.0)) == 1.0
    with pytest.raises(ValueError, match="no data points"):
        rms_deviation(lambda a: 0.0, data, (10.0, 20.0))


@settings(max_examples=50)
@given(
    resid=st.lists(st.floats(-50, 50), min_size=1, max_size=40),
    scale=st.floats(0.1, 10.0),
    seed=st.integers(0, 2**32 - 1),
)
def test_rms_permutation_and_scaling(resid, scale, seed):
    n = len(resid)
    a = np.linspace(170, 400, n)
    data = MeasurementSet(a, np.array(resid))
    base = rms_deviation(lambda x: 0.0, data)
    perm = np.random.default_rng(seed).permutation(n)
    shuffled = MeasurementSet(a[perm], np.array(resid)[perm])
    assert rms_deviation(lambda x: 0.0, shuffled) == pytest.approx(base, rel=1e-12, abs=1e-12)
    scaled = MeasurementSet(a, scale * np.array(resid))
    assert rms_deviation(lambda x: 0.0, scaled) == pytest.approx(scale * base, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("dist", DISTRIBUTIONS)
def test_noise_free_data_selects_generator(config, dist):
    data = synthetic_measurements(config, dist, np.linspace(169.5, 400.0, 30))
    report = compare_distributions(data, config)
    assert report.best is dist
    assert report.sigma[dist] < 1e-6
    assert report.n_points == 30


def test_tie_break_uses_fixed_order(config, monkeypatch):
    import corrugated_casimir.analysis as analysis

    monkeypatch.setattr(analysis, "averaged_force", lambda a, cfg, dist, spec=None: -10.0)
    data = MeasurementSet([200.0, 300.0], [-11.0, -9.0])
    report = compare_distributions(data, config)
    assert len(set(report.sigma.values())) == 1
    assert report.best is PD.UNIFORM


def test_flat_plate_sigmas_agree(config):
    flat = config.with_amplitude(0.0)
    data = synthetic_measurements(flat, PD.TRIANGULAR, np.linspace(169.5, 400.0, 5))
    report = compare_distributions(data, flat)
    assert max(report.sigma.values()) < 1e-10


def test_report_serialization(config):
    data = synthetic_measurements(config, PD.HALF_UNIFORM, np.linspace(169.5, 400.0, 4))
    report = compare_distributions(data, config)
    doc = json.loads(report.to_json())
    assert set(doc["sigma_pN"]) == {"uniform", "half", "triangular", "peak"}
    assert doc["best"] == "half"
    assert doc["a_range_nm"] == [169.5, 400.0]
    assert "<- best" in report.to_table()


def test_synthetic_noise_is_reproducible(config):
    a = np.linspace(169.5, 400.0, 10)
    x = synthetic_measurements(config, PD.UNIFORM, a, 5.0, np.random.default_rng(3))
    y = synthetic_measurements(config, PD.UNIFORM, a, 5.0, np.random.default_rng(3))
    assert np.array_equal(x.F, y.F)
    clean = np.array([averaged_force(v, config, PD.UNIFORM) for v in a])
    assert not np.array_equal(x.F, clean)
