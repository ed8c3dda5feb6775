import json

import pytest

from corrugated_casimir.cli import main
from corrugated_casimir.model import default_experiment


def _run(args, tmp_path, name="out"):
    out = tmp_path / name
    code = main(args + ["--output", str(out)])
    return code, out.read_text() if out.exists() else ""


def _data_lines(text):
    return [l for l in text.splitlines() if l and not l.startswith("#")]


def test_curve_csv(tmp_path):
    code, text = _run(["curve", "--dist", "uniform", "--amin", "169.5", "--amax", "400", "--steps", "62"], tmp_path)
    assert code == 0
    lines = _data_lines(text)
    assert lines[0] == "a_nm,F_pN"
    a = [float(l.split(",")[0]) for l in lines[1:]]
    assert len(a) == 62
    assert all(x < y for x, y in zip(a, a[1:]))


def test_curve_is_deterministic(tmp_path):
    args = ["curve", "--dist", "triangular", "--steps", "10", "--format", "json"]
    _, first = _run(args, tmp_path, "a")
    _, second = _run(args, tmp_path, "b")
    assert first == second
    assert json.loads(first)["metadata"]["config"] == default_experiment().to_dict()


def test_equilibria(tmp_path):
    code, text = _run(["equilibria", "--z0", "200"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    xs = {e["x0_nm"] for e in doc["equilibria"]}
    assert {275.0, 825.0} <= xs
    assert doc["config_hash"] == default_experiment().digest()


def test_lateral_map(tmp_path):
    code, text = _run(["lateral", "--z0", "200", "--x0-steps", "11"], tmp_path)
    assert code == 0
    lines = _data_lines(text)
    assert lines[0] == "x0_nm,z0_nm,Fx_pN"
    assert len(lines) == 12
    code, text = _run(["lateral", "--z0", "200", "--x0-steps", "4", "--format", "json"], tmp_path, "j")
    assert len(json.loads(text)["points"]) == 4


def test_config_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"amplitude_nm": 0.0}))
    code, text = _run(["curve", "--config", str(cfg), "--steps", "3", "--format", "json", "--dist", "peak"], tmp_path)
    assert code == 0
    assert json.loads(text)["metadata"]["config"]["amplitude_nm"] == 0.0
    code, _ = _run(["equilibria", "--config", str(cfg), "--z0", "200"], tmp_path, "e")
    assert code == 1


def test_fit_end_to_end(tmp_path):
    code, _ = _run(["curve", "--dist", "half", "--steps", "25"], tmp_path, "measured.csv")
    assert code == 0
    code, text = _run(["fit", "--data", str(tmp_path / "measured.csv"), "--format", "json"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert len(doc["sigma_pN"]) == 4
    assert doc["best"] == "half"
    code, text = _run(["fit", "--data", str(tmp_path / "measured.csv"), "--range", "200:300"], tmp_path, "t")
    assert code == 0 and "points used" in text


def test_validate_small_grid(tmp_path):
    code, text = _run(
        ["validate", "--z0", "300", "--x0-fractions", "0.125", "--scales", "0.01", "--format", "json"], tmp_path
    )
    assert code == 0
    (report,) = json.loads(text)["reports"]
    assert report["rel_diff"] <= 5e-3


def test_bad_flags_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["curve", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["fit", "--data", "x.csv", "--range", "nope"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_computation_error_exit_1(tmp_path, capsys):
    assert main(["fit", "--data", str(tmp_path / "missing.csv")]) == 1
    assert "error:" in capsys.readouterr().err
    assert main(["curve", "--amin", "50", "--amax", "60", "--steps", "2"]) == 1
