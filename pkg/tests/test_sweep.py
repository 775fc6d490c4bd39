import csv
import io
import json
import math

import numpy as np
import pytest

from tripartite.figures import FIGURES, a2_surface, combine, figure_tables, reproduce_figure
from tripartite.sweep import ResultTable, SpecError, SweepSpec, emit, read_json, run_sweep, to_csv


def test_spec_validation():
    with pytest.raises(SpecError):
        SweepSpec(state="ghz9")
    with pytest.raises(SpecError):
        SweepSpec(state="ghz1", steps=1)
    with pytest.raises(SpecError):
        SweepSpec(state="ghz1", a2_grid=[])
    with pytest.raises(SpecError):
        SweepSpec.from_dict({"state": "ghz1", "bogus": 1})
    assert SweepSpec(state="ghz1", a2_grid=[0.5, 0.1]).a2_grid == [0.1, 0.5]


def test_w_amplitude_resolution():
    assert SweepSpec(state="w1")._w_squares(None) == (1 / 3, 1 / 3, 1 / 3)
    assert SweepSpec(state="w1", c2=0.2)._w_squares(0.5) == pytest.approx((0.5, 0.3, 0.2))
    assert SweepSpec(state="w1")._w_squares(0.4) == pytest.approx((0.4, 0.3, 0.3))
    with pytest.raises(SpecError):
        SweepSpec(state="w1", b2=0.7)._w_squares(0.5)


def test_sweep_columns_and_gaps():
    table = run_sweep(SweepSpec(state="ghz1", a2_grid=[0.2, 0.6], steps=21))
    assert table.n_rows == 42
    assert np.max(table["abs_gap"]) <= 1e-12
    assert table["a2"][0] == 0.2 and table["a2"][-1] == 0.6
    assert table.metadata["regime"] == "markovian"
    w = run_sweep(SweepSpec(state="w2", steps=11, lambda_ratio=0.5, t_max=10))
    assert np.max(w["concurrence_gap"]) <= 1e-12
    assert "closed_form_pi" in w.columns


def test_mixture_sweep_has_no_closed_form():
    table = run_sweep(SweepSpec(state="mixture", p_grid=[0.0, 1.0], steps=5))
    assert "closed_form_pi" not in table.columns
    assert table["pi"][5] == pytest.approx(1.0)


def test_parallel_equals_serial():
    spec = SweepSpec(state="ghz3", a2_grid=list(np.linspace(0, 1, 9)), steps=31, lambda_ratio=0.01, t_max=60)
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=4)
    assert to_csv(serial) == to_csv(parallel)


def test_csv_is_rfc4180_and_exact(tmp_path):
    table = run_sweep(SweepSpec(state="w1", steps=7))
    path = emit(table, tmp_path / "out.csv", "csv")
    raw = path.read_bytes()
    assert raw.count(b"\r\n") == table.n_rows + 1
    rows = list(csv.reader(io.StringIO(raw.decode(), newline="")))
    header, body = rows[0], rows[1:]
    k = header.index("pi")
    assert [float(r[k]) for r in body] == list(table["pi"])
    meta = json.loads((tmp_path / "out.csv.meta.json").read_text())
    assert meta["spec"]["state"] == "w1"


def test_json_round_trip(tmp_path):
    table = run_sweep(SweepSpec(state="ghz2", a2=0.3, steps=9))
    path = emit(table, tmp_path / "out.json", "json")
    back = read_json(path)
    assert back.metadata["spec"]["a2"] == 0.3
    for name in table.columns:
        assert np.array_equal(back[name], table[name])


def test_emit_stdout_and_errors(capsys, tmp_path):
    table = ResultTable({"x": np.array([1.0, 2.0])})
    emit(table, "-", "csv")
    assert capsys.readouterr().out == "x\r\n1.0\r\n2.0\r\n"
    with pytest.raises(ValueError):
        emit(table, "-", "xml")
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OSError):
        emit(table, blocker / "sub" / "out.csv", "csv")


def test_result_table_rejects_ragged():
    with pytest.raises(ValueError):
        ResultTable({"a": [1, 2], "b": [1]})


def test_a2_surface():
    grid = a2_surface()
    assert len(grid) == 51 and grid[0] == 0.0 and grid[-1] == 1.0
    assert a2_surface(2 / 3)[-1] <= 2 / 3


def test_every_figure_is_defined_and_runs():
    for fig_id in FIGURES:
        tables = figure_tables(fig_id, steps=3)
        wide = combine(fig_id, tables)
        assert wide.n_rows == sum(t.n_rows for t in tables.values())
        for q in FIGURES[fig_id].quantities:
            assert all(q in t.columns for t in tables.values())
    with pytest.raises(KeyError):
        figure_tables("7")


def test_figure_files(tmp_path):
    wide, long = reproduce_figure("4", tmp_path, steps=11)
    assert wide.name == "fig4.csv" and long.name == "fig4_long.csv"
    rows = list(csv.reader(long.open(newline="")))
    assert rows[0] == ["series", "a2", "gamma0_t", "quantity", "value"]
    assert len(rows) == 1 + 2 * 11 * 2
    assert {r[0] for r in rows[1:]} == {"W1", "W2"}
    assert float(rows[1][1]) == pytest.approx(1 / 3)


def test_figure_6a_concurrence_split():
    tables = figure_tables("6a", steps=201)
    w1, w2 = tables["W1"], tables["W2"]
    assert np.all(w1["C_AB"][:-1] > 0)
    assert np.any(w2["C_AB"] == 0.0)
    assert math.isclose(w1["C_AB"][0], 2 / 3, abs_tol=1e-12)


def test_markovian_decay_without_esd():
    table = run_sweep(SweepSpec(state="ghz1", a2=0.6, lambda_ratio=3.0, t_max=5, steps=501))
    pi = table["pi"]
    assert np.all(pi > 0) and np.all(np.diff(pi) < 0)


def test_markovian_sudden_death():
    table = run_sweep(SweepSpec(state="ghz1", a2=0.2, lambda_ratio=3.0, t_max=5, steps=501))
    dead = np.flatnonzero(table["pi"] <= 1e-12)
    assert dead.size and np.all(np.diff(dead) == 1) and dead[-1] == table.n_rows - 1
    assert 1.2 < table["gamma0_t"][dead[0]] < 1.24


def test_w1_revival_at_long_memory():
    table = run_sweep(SweepSpec(state="w1", lambda_ratio=0.001, t_max=300, steps=3001))
    t, pi = table["gamma0_t"], table["pi"]
    k = int(np.argmin(pi[t < 150]))
    assert 70 < t[k] < 73 and pi[k] < 1e-6
    assert pi[(t > 100) & (t < 200)].max() > 1e-3


def test_every_figure_passes_the_gap_check():
    for fig_id in FIGURES:
        for table in figure_tables(fig_id, steps=41).values():
            if "abs_gap" in table.columns:
                assert np.max(table["abs_gap"]) <= 1e-9
            if "concurrence_gap" in table.columns:
                assert np.max(table["concurrence_gap"]) <= 1e-9


def test_three_row_table_gives_four_csv_lines():
    table = ResultTable({"a": np.array([1.0, 0.1, 1e-300]), "b": np.array([2.0, 3.0, -0.0])})
    text = to_csv(table)
    assert text.split("\r\n")[:-1] == ["a,b", "1.0,2.0", "0.1,3.0", "1e-300,-0.0"]
