import json

import pytest

from tripartite.audit import audit
from tripartite.cli import _grid, main


def test_grid_parsing():
    assert _grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert _grid("0.1,0.3") == [0.1, 0.3]


def test_evolve_to_stdout(capsys):
    assert main(["evolve", "--state", "ghz1", "--a2", "0.2", "--steps", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("gamma0_t,a2,b2,P_t")
    assert len(out) == 4


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"state": "w1", "steps": 4, "lambda_ratio": 0.5, "t_max": 10}))
    out = tmp_path / "o.json"
    assert main(["evolve", "--config", str(cfg), "--steps", "6", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["metadata"]["spec"]["steps"] == 6
    assert data["metadata"]["spec"]["lambda_ratio"] == 0.5
    assert data["metadata"]["regime"] == "non-markovian"


def test_sweep_writes_grid(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--state", "ghz2", "--a2-grid", "0:1:0.5", "--steps", "3", "--workers", "2",
                 "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 3 * 3


@pytest.mark.parametrize("argv", [
    ["evolve"],                                                  # no state
    ["evolve", "--state", "w1", "--a2", "0.9", "--b2", "0.5"],   # bad amplitudes
    ["evolve", "--state", "ghz1", "--steps", "1"],
    ["evolve", "--state", "ghz1", "--a2", "2"],
    ["evolve", "--config", "/nonexistent.json", "--state", "ghz1"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_evolve_rejects_grid(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"state": "ghz1", "a2_grid": [0.1, 0.2]}))
    assert main(["evolve", "--config", str(cfg)]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["evolve", "--state", "nope"])
    assert exc.value.code == 2


def test_figure_command(tmp_path, capsys):
    assert main(["figure", "3a", "--out", str(tmp_path), "--steps", "5"]) == 0
    printed = capsys.readouterr().out.split()
    assert printed[0].endswith("fig3a.csv")


def test_audit_command_passes(capsys):
    assert main(["audit", "--params", "3", "--times", "5"]) == 0
    assert all(line.startswith("PASS") for line in capsys.readouterr().out.splitlines())


def test_audit_violation_exit_1(capsys):
    # a tolerance below rounding noise must be reported as a violation
    assert main(["audit", "--tolerance", "1e-30", "--params", "3", "--times", "5"]) == 1
    assert "worst offender" in capsys.readouterr().out


def test_audit_validation():
    with pytest.raises(ValueError):
        audit(tolerance=0)
    with pytest.raises(ValueError):
        audit(n_params=0)
