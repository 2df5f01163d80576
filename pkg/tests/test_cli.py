"""Command-line behavior: schemas, exit codes, determinism, CSV."""

from __future__ import annotations

import json
import math

import pytest

from neubound import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pzero_schema(capsys):
    code, out, _ = _run(capsys, "pzero", "--n", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"n": 2, "p": pytest.approx(1.841183781, abs=1e-8)}


def test_mikhlin_schema(capsys):
    code, out, _ = _run(capsys, "mikhlin", "--n", "3", "--R", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["value_sq"] == pytest.approx(8.38905, abs=1e-4)
    assert payload["kind"] == "exact"


def test_mikhlin_star_matches_library(capsys):
    code, out, _ = _run(
        capsys, "mikhlin-star", "--m1", "1", "--m2", "1", "--m3", "0", "--n", "3", "--R", "2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value_sq"] == pytest.approx(30.556224395722595, rel=1e-8)
    assert payload["ball_value_sq"] == pytest.approx(8.389056099, rel=1e-8)


def test_qc_star_and_spiral(capsys):
    code, out, _ = _run(capsys, "qc", "--beta", "0.5")
    assert code == 0
    assert json.loads(out)["K"] == pytest.approx(3.0 + 2.0 * math.sqrt(2.0), rel=1e-9)

    code, out, _ = _run(capsys, "qc", "--beta", "0.5", "--gamma", "0.3")
    assert code == 0
    assert json.loads(out)["kind"] == "spiral"

    code, _, err = _run(capsys, "qc")
    assert code == 1 and "beta" in err


def test_qc_piecewise(capsys):
    code, out, _ = _run(
        capsys, "qc", "--matrix", "1", "0", "0", "1", "--matrix", "1", "0", "1", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "piecewise_affine"
    assert payload["K"] == pytest.approx((3.0 + math.sqrt(5.0)) / 2.0, rel=1e-9)


def test_mecb_bowtie(capsys):
    code, out, _ = _run(capsys, "mecb", "--domain", "bowtie")
    assert code == 0
    payload = json.loads(out)
    assert payload["center"][1] == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert payload["radius"] == pytest.approx(5.0 / 6.0, abs=1e-9)


def test_bound_report_round_trip(capsys):
    code, out, err = _run(capsys, "bound", "--domain", "bowtie")
    assert code == 0
    payload = json.loads(out)
    assert payload["best_value"] == payload["bounds"][payload["best"]]["value"]
    assert "warning:" in err  # the d/2-convention note is surfaced


def test_byte_identical_reruns(capsys):
    _, first, _ = _run(capsys, "bound", "--domain", "bowtie")
    _, second, _ = _run(capsys, "bound", "--domain", "bowtie")
    assert first == second
    _, third, _ = _run(capsys, "mecb", "--domain", "tan_disc", "--seed", "5")
    _, fourth, _ = _run(capsys, "mecb", "--domain", "tan_disc", "--seed", "5")
    assert third == fourth


def test_inline_json_domain(capsys):
    domain = json.dumps(
        {"kind": "polygon", "vertices": [[0, 0], [2, 0], [2, 2], [0, 2]], "convex": True}
    )
    code, out, _ = _run(capsys, "bound", "--domain", domain)
    assert code == 0
    payload = json.loads(out)
    values = {b["formula"]: b["value"] for b in payload["bounds"]}
    assert values["payne_weinberger"] == pytest.approx(math.pi**2 / 8.0, rel=1e-9)


def test_fem_table_csv(capsys):
    code, out, _ = _run(
        capsys, "fem", "--domain", "unit_disc", "--refinement", "2",
        "--samples", "24", "--table", "--output", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "refinement,dof_count,mesh_size,mu1"
    assert len(lines) == 4
    mu = [float(line.split(",")[3]) for line in lines[1:]]
    assert mu[0] > mu[1] > mu[2]


def test_verify_command(capsys):
    code, out, _ = _run(
        capsys, "verify", "--domain", "unit_disc", "--refinement", "3"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_satisfied"] is True
    assert payload["fem_mu1"] > payload["bounds"][0]["value"]


def test_reproduce_warns_on_discrepancy(capsys):
    code, out, err = _run(capsys, "reproduce", "tan_star")
    assert code == 0
    payload = json.loads(out)
    assert payload["discrepancies"]
    assert "warning:" in err


def test_reproduce_csv_table(capsys):
    code, out, _ = _run(capsys, "reproduce", "pzero_table", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8  # header + seven dimensions
    assert lines[0].startswith("n,published,computed")


def test_exit_code_for_input_errors(capsys):
    assert _run(capsys, "reproduce", "nonsense")[0] == 1
    assert _run(capsys, "mikhlin", "--n", "3", "--R", "0.5")[0] == 1
    assert _run(capsys, "bound", "--domain", "/no/such/file.json")[0] == 1
    assert _run(capsys, "pzero")[0] == 1  # missing required flag
    assert _run(capsys, "fem", "--domain", "unit_disc", "--output", "csv")[0] == 1


def test_exit_code_for_numerical_failures(capsys):
    code, _, err = _run(capsys, "mikhlin", "--n", "3", "--R", "800")
    assert code == 2
    assert "numerical error" in err


def test_help_exits_cleanly(capsys):
    assert _run(capsys, "--help")[0] == 0


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV, "4")
    code, out, _ = _run(capsys, "pzero", "--n", "2")
    assert code == 0
    assert json.loads(out)["p"] == 1.841

    monkeypatch.setenv(cli.PRECISION_ENV, "frog")
    assert _run(capsys, "pzero", "--n", "2")[0] == 1
    monkeypatch.setenv(cli.PRECISION_ENV, "0")
    assert _run(capsys, "pzero", "--n", "2")[0] == 1
