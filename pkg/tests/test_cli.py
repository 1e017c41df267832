import csv
import json
import math

import numpy as np
import pytest

from semiharmonic import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(text.splitlines()))


def test_phase_csv_schema_and_unitarity(capsys):
    code, out, _ = run(capsys, "phase", "--area", "1", "--a", "2.5", "--emin", "0.001", "--emax", "1", "--n0", "60")
    assert code == 0
    table = rows(out)
    assert table[0] == ["E", "delta", "S_re", "S_im"]
    data = np.array(table[1:], dtype=float)
    assert np.max(np.abs(data[:, 2] ** 2 + data[:, 3] ** 2 - 1)) <= 1e-10
    # slope turns from falling to rising once, near 0.162
    slopes = np.diff(data[:, 1]) / np.diff(data[:, 0])
    turn = np.flatnonzero((slopes[:-1] < 0) & (slopes[1:] >= 0))
    assert len(turn) == 1
    assert abs(data[turn[0] + 1, 0] - 0.16208517) < 0.02


def test_seventeen_digits(capsys):
    _, out, _ = run(capsys, "phase", "--area", "1", "--a", "2.5", "--emin", "0.1", "--emax", "0.2", "--n0", "3")
    for field in rows(out)[1]:
        assert float(field) == float(format(float(field), ".17g"))
    assert rows(out)[2][0] == "0.15000000000000002"


def test_degenerate_window(capsys):
    code, _, err = run(capsys, "phase", "--a", "1", "--b", "1", "--v0", "0.5", "--emin", "1", "--emax", "1")
    assert code == 2
    assert "emin" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--delta", "1", "--a", "2"],
        ["bound", "--area", "1"],
        ["bound", "--a", "1", "--b", "1"],
        ["bound", "--a", "-1", "--b", "1", "--v0", "1"],
    ],
)
def test_geometry_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_delay_sign_structure(capsys):
    code, out, _ = run(capsys, "delay", "--area", "1", "--a", "2.5", "--emin", "0.005", "--emax", "1", "--n0", "80")
    assert code == 0
    table = rows(out)
    assert table[0] == ["E", "tau_p", "tau_e", "tau_w"]
    data = np.array(table[1:], dtype=float)
    e, tp, te, tw = data.T
    assert np.all(te[e < 0.034] < 0)
    assert np.all(te[(e > 0.05) & (e < 0.4)] > 0)
    assert np.all(tw == tp - te)


def test_delay_delta_mean(capsys):
    code, out, _ = run(capsys, "delay", "--delta", "1", "--emin", "2", "--emax", "10", "--n0", "200")
    assert code == 0
    te = np.array(rows(out)[1:], dtype=float)[:, 2]
    assert abs(te.mean() - math.pi / 2) < 0.05


def test_delay_workers_identical(capsys, monkeypatch):
    argv = ["delay", "--area", "1", "--a", "0.5", "--emin", "0.1", "--emax", "2", "--n0", "16"]
    _, serial, _ = run(capsys, *argv)
    monkeypatch.setenv(cli.WORKERS_ENV, "2")
    _, parallel, _ = run(capsys, *argv)
    assert serial == parallel


@pytest.mark.parametrize("a, e_a", [("2.0", 0.05056413), ("1.5", 0.07205970)])
def test_ea(capsys, a, e_a):
    code, out, _ = run(capsys, "ea", "--area", "1", "--a", a)
    assert code == 0
    assert abs(float(out) - e_a) <= 1e-4
    assert len(out.strip().split(".")[1]) == 8


def test_ea_json(capsys):
    code, out, _ = run(capsys, "ea", "--area", "1", "--a", "2.0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["a"] == 2.0
    assert abs(doc["E_a"] - 0.05056413) <= 1e-4


def test_ea_not_found(capsys):
    assert run(capsys, "ea", "--area", "1", "--a", "2.5", "--emin", "0.5", "--emax", "1")[0] == 4


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--area", "1", "--a", "2.5")
    assert code == 0
    assert len(out.split()) == 1
    code, out, _ = run(capsys, "bound", "--delta", "1")
    assert abs(float(out) + 0.0797104) <= 1e-5


def test_bound_deep_well_matches_ladder(capsys):
    from semiharmonic.model import WellConfig
    from semiharmonic.spectra import bound_states

    code, out, _ = run(capsys, "bound", "--a", "5", "--b", "5", "--v0", "2", "--format", "json")
    assert code == 0
    states = json.loads(out)
    ladder = bound_states(WellConfig(a=5.0, b=5.0, v0=2.0), background="ladder", n_scan=400, n_ladder=20_000)
    assert len(states) == len(ladder) == 5


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# wide well\narea = 1\na = 2.5\nemin = 0.1\nemax = 0.2\nn0 = 3\n")
    code, out, _ = run(capsys, "phase", "--config", str(cfg))
    assert code == 0
    assert len(rows(out)) == 4
    code, out, _ = run(capsys, "phase", "--config", str(cfg), "--emax", "0.3")
    assert rows(out)[-1][0] == "0.29999999999999999"


def test_config_file_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "bound", "--config", str(bad))[0] == 2
    assert run(capsys, "bound", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_output_file_deterministic(capsys, tmp_path):
    paths = [tmp_path / "one.csv", tmp_path / "two.csv"]
    for p in paths:
        assert run(capsys, "phase", "--delta", "1", "--emin", "0.05", "--emax", "3", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_validate_only_oracles(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "validate", "--only", "oracles", "--json", str(report))
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()[:-1]] == ["C8", "C9"]
    doc = json.loads(report.read_text())
    assert doc["passed"] is True
    assert {c["key"] for c in doc["criteria"]} == {"C8", "C9"}
    assert all("delta" in c and "tolerance" in c for c in doc["criteria"])


def test_numerical_failure_exit(capsys, monkeypatch):
    from semiharmonic.errors import StiffnessError

    def boom(*args, **kwargs):
        raise StiffnessError("forced")

    monkeypatch.setattr(cli.spectra, "bound_states", boom)
    code, _, err = run(capsys, "bound", "--delta", "1")
    assert code == 3
    assert "forced" in err
