import csv
import json

import numpy as np
import pytest

from stabsel.cli import main
from stabsel.dataset import load_csv
from stabsel.synth import read_ground_truth


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def generated(tmp_path):
    data, truth = tmp_path / "d.csv", tmp_path / "t.csv"
    main(["gen", "--n", "60", "--d", "30", "--n-informative", "5", "--snr", "8",
          "--seed", "3", "--out", str(data), "--truth", str(truth)])
    return data, truth


def test_gen(generated):
    data, truth = generated
    ds = load_csv(str(data), "y")
    assert (ds.N, ds.D) == (60, 30)
    assert len(read_ground_truth(truth).informative) == 5


@pytest.mark.parametrize("selector", ["lasso", "cmim"])
def test_select(generated, tmp_path, selector):
    data, _ = generated
    out, summ = tmp_path / "f.csv", tmp_path / "s.json"
    main(["select", "--input", str(data), "--T", "5", "--L", "2", "--V", "1",
          "--tau", "0.6", "--selector", selector, "--q", "4", "--k", "inf",
          "--out", str(out), "--summary", str(summ)])
    rows = _rows(out)
    assert len(rows) == 30
    pi = np.array([float(r["frequency"]) for r in rows])
    assert pi.sum() == pytest.approx(4.0)
    info = json.loads(summ.read_text())
    assert info["runs"] == 10
    assert info["selected"] == [int(r["index"]) for r in rows if r["selected"] == "1"]


def test_bounds(capsys):
    main(["bounds", "--L", "2", "--tau", "0.9", "--theta", "0.028",
          "--q", "28", "--D", "1000", "--n-noise", "980"])
    out = capsys.readouterr().out
    assert "fp_rate: 0.00098 at l0=2" in out
    assert "expected_false_positives: 0.9604" in out
    main(["bounds", "--L", "4", "--tau", "0.2", "--theta", "0.5"])
    assert "fn_rate" in capsys.readouterr().out


def test_tau_min(tmp_path):
    out = tmp_path / "tau.csv"
    main(["tau-min", "--L", "2", "--q-max", "40", "--out", str(out)])
    rows = {int(r["q"]): r["tau_min"] for r in _rows(out)}
    assert rows[31] != "infeasible"
    assert rows[32] == "infeasible"


def test_simulate_scores(tmp_path):
    out = tmp_path / "s.csv"
    main(["simulate-scores", "--noise", "gaussian", "cauchy", "--dims", "1,10",
          "--trials", "500", "--out", str(out)])
    rows = _rows(out)
    assert [(r["noise"], r["D"]) for r in rows] == [
        ("gaussian", "1"), ("gaussian", "10"), ("cauchy", "1"), ("cauchy", "10")]


@pytest.mark.parametrize("protocol", ["precision", "fptp"])
def test_experiment(tmp_path, protocol):
    out, summ = tmp_path / "l.csv", tmp_path / "s.csv"
    main(["experiment", protocol, "--n", "60", "--d", "40", "--q", "3-4",
          "--repetitions", "2", "--T", "3", "--tau", "0.5",
          "--out", str(out), "--summary", str(summ)])
    metrics = {r["metric"] for r in _rows(out)}
    assert metrics == ({"precision"} if protocol == "precision" else {"fp", "tp", "selected", "tau"})
    assert len(_rows(summ)) == 2 * len(metrics)


def test_bad_input_exits(tmp_path):
    with pytest.raises(SystemExit):
        main(["select"])


def test_malformed_csv_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,y\n1,2\nfoo,3\n")
    assert main(["select", "--input", str(bad), "--out", str(tmp_path / "o.csv")]) == 2
    assert "row 3, column 1" in capsys.readouterr().err
