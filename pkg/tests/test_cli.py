"""Command-line contract: scenarios, exit codes, determinism, artifacts."""

import filecmp
import json
import os

import pytest

from specgap.cli import EXIT_FAIL, EXIT_PASS, EXIT_PRECONDITION, main

SCENARIOS = os.path.join(os.path.dirname(__file__), "..", "scenarios")


def run_cli(*argv):
    return main(list(argv))


def test_run_ucp_scenario(tmp_path):
    code = run_cli("run", os.path.join(SCENARIOS, "ucp-1d.toml"), "--out", str(tmp_path))
    assert code == EXIT_PASS
    table = (tmp_path / "ucp-ratios.csv").read_text().splitlines()
    assert table[0] == "index,energy,mass_ratio,critical_n"
    assert len(table) > 5
    cert = json.loads((tmp_path / "ucp-cert.json").read_text())
    assert cert["pass"] is True
    assert cert["kind"] == "ucp"
    assert len(cert["ratios"]) == len(table) - 1
    assert min(cert["ratios"]) >= cert["constant"]["value"]


def test_run_spectrum_scenario(tmp_path):
    code = run_cli("run", os.path.join(SCENARIOS, "free-bands.toml"), "--out", str(tmp_path))
    assert code == EXIT_PASS
    rows = (tmp_path / "spectrum.csv").read_text().splitlines()
    assert rows[0] == "index,eigenvalue"
    import numpy as np

    lam1 = float(rows[1].split(",")[1])
    assert lam1 == pytest.approx(np.pi**2, rel=1e-4)


def test_run_lift_scenario(tmp_path):
    code = run_cli("run", os.path.join(SCENARIOS, "lift-bottom.toml"), "--out", str(tmp_path))
    assert code == EXIT_PASS
    row = (tmp_path / "lift-bottom.csv").read_text().splitlines()[1]
    assert row.startswith("bottom,") and row.endswith(",pass")


def test_run_gap_minimax_scenario(tmp_path):
    code = run_cli("run", os.path.join(SCENARIOS, "gap-minimax.toml"), "--out", str(tmp_path))
    assert code == EXIT_PASS
    cert = json.loads((tmp_path / "gap-minimax.json").read_text())
    assert cert["pass"] is True
    assert [r["n"] for r in cert["minimax"]] == [1, 2, 3]
    assert cert["automorphism"]["pass"] is True


def test_run_band_edge_scenario(tmp_path):
    code = run_cli("run", os.path.join(SCENARIOS, "band-edge-mathieu.toml"), "--out", str(tmp_path))
    assert code == EXIT_PASS
    rows = (tmp_path / "edge-trace.csv").read_text().splitlines()
    assert rows[0] == "t,f_minus,f_plus,slope_minus,slope_plus,kappa,pass"
    assert len(rows) == 21  # header + 20 coupling points
    svg = (tmp_path / "edge-trace.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_determinism_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert run_cli("run", os.path.join(SCENARIOS, "ucp-1d.toml"), "--out", str(out)) == EXIT_PASS
    for name in ("ucp-cert.json", "ucp-ratios.csv"):
        assert filecmp.cmp(out1 / name, out2 / name, shallow=False), name


def test_seed_override_changes_artifacts(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    run_cli("run", os.path.join(SCENARIOS, "gap-minimax.toml"), "--out", str(out1))
    run_cli("run", os.path.join(SCENARIOS, "gap-minimax.toml"), "--seed", "99", "--out", str(out2))
    a = (out1 / "gap-minimax.json").read_text()
    b = (out2 / "gap-minimax.json").read_text()
    assert a != b


def test_empty_config_is_parse_error(tmp_path):
    cfg = tmp_path / "empty.toml"
    cfg.write_text("")
    assert run_cli("run", str(cfg)) == EXIT_FAIL


def test_malformed_toml_is_parse_error(tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("kind = [unclosed")
    assert run_cli("run", str(cfg)) == EXIT_FAIL


def test_missing_field_is_descriptive_error(tmp_path, capsys):
    cfg = tmp_path / "nofield.toml"
    cfg.write_text('kind = "ucp"\n[geometry]\nextent = [[0.0, 2.0]]\n')
    assert run_cli("run", str(cfg), "--out", str(tmp_path)) == EXIT_FAIL
    err = capsys.readouterr().err
    assert "delta" in err and "geometry" in err


def test_missing_file_is_error():
    assert run_cli("run", "/nonexistent/path.toml") == EXIT_FAIL


def test_precondition_failure_exit_code(tmp_path):
    cfg = tmp_path / "precond.toml"
    cfg.write_text(
        """
kind = "lift"
seed = 1

[geometry]
dimension = 1
cell_scale = 1.0
extent = [[0.0, 8.0]]
delta = 0.2
seed = 1

[grid]
resolution = 32
boundary = "dirichlet"

[potential]
generator = "constant"
value = 0.0

[perturbation]
generator = "indicator"
theta = 1.0

[parameters]
kind = "gap-left"
gamma = 0.4
energy = 10.0

[output]
certificate = "cert.json"
table = "cert.csv"
"""
    )
    # gamma = 0.4 sits in the first spectral gap of the free operator on
    # (0, 8), whose width is far below ||W|| = 1: the norm condition fails
    code = run_cli("run", str(cfg), "--out", str(tmp_path))
    assert code == EXIT_PRECONDITION
    cert = json.loads((tmp_path / "cert.json").read_text())
    assert cert["precondition_failed"] is True


def test_kappa_subcommand(capsys):
    assert run_cli("kappa", "--delta", "0.25", "--w-sup", "1.0", "--exponent-n", "2.0") == EXIT_PASS
    out = capsys.readouterr().out
    assert "value = 0.00390625" in out
    assert "shift = 0.0" in out


def test_bands_subcommand(tmp_path, capsys):
    code = run_cli("bands", "--amplitude", "0.0", "--resolution", "256", "--theta-count", "64",
                   "--modes", "16", "--bands", "3", "--out", str(tmp_path), "--svg")
    assert code == EXIT_PASS
    import numpy as np

    rows = (tmp_path / "bands.csv").read_text().splitlines()
    assert rows[0] == "band,lower_edge,upper_edge"
    upper = float(rows[1].split(",")[2])
    assert upper == pytest.approx(np.pi**2, rel=1e-9)
    assert (tmp_path / "bands.svg").exists()


def test_full_verify_smoke_and_tamper(tmp_path):
    out = tmp_path / "fv"
    code = run_cli("full-verify", "--profile", "smoke", "--seed", "0", "--out", str(out))
    assert code == EXIT_PASS
    rep = json.loads((out / "full-verify.json").read_text())
    assert rep["pass"] is True
    assert {s["suite"] for s in rep["suites"]} == {
        "linalg", "schrodinger", "ghost", "gaps", "lifting", "bands",
    }
    out2 = tmp_path / "fv-tampered"
    code2 = run_cli("full-verify", "--profile", "smoke", "--seed", "0", "--out", str(out2),
                    "--debug-scale-kappa", "1e6")
    assert code2 == EXIT_FAIL
    rep2 = json.loads((out2 / "full-verify.json").read_text())
    lifting = next(s for s in rep2["suites"] if s["suite"] == "lifting")
    assert not lifting["pass"]


def test_env_var_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SPECGAP_OUT", str(tmp_path / "envout"))
    monkeypatch.chdir(tmp_path)
    code = run_cli("run", os.path.join(SCENARIOS, "gap-minimax.toml"))
    assert code == EXIT_PASS
    assert (tmp_path / "envout" / "gap-minimax.json").exists()
