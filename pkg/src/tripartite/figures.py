"""Data behind figures 1-6: parameter settings and CSV writers.

Each figure is a list of series; each series is one :class:`SweepSpec`.
Outputs per figure: ``fig<id>.csv`` (all sweep columns, a leading
``series`` column) and ``fig<id>_long.csv`` (series, a2, gamma0_t,
quantity, value) for plotting.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .sweep import DEFAULT_STEPS, ResultTable, SweepSpec, emit, run_sweep

A2_STEP = 0.02

# time windows: Markovian decay is over by gamma0 t = 5; lambda = 0.01 gamma0
# puts the first two zeros at 23.3 and 67.8, lambda = 0.001 gamma0 at 71.3 and 211.8
T_MARKOV, T_NM2, T_NM3 = 5.0, 100.0, 300.0


def a2_surface(upper: float = 1.0, step: float = A2_STEP) -> list:
    n = int(round(upper / step))
    grid = [round(k * step, 12) for k in range(n + 1)]
    if grid[-1] > upper:
        grid[-1] = upper
    return grid


@dataclass(frozen=True)
class Figure:
    title: str
    series: tuple  # (label, SweepSpec kwargs)
    quantities: tuple = ("pi", "closed_form_pi")


FIGURES = {
    "1a": Figure("pi-tangle of GHZ type I, lambda = 3 gamma0",
                 (("I", dict(state="ghz1", lambda_ratio=3.0, t_max=T_MARKOV, a2_grid=a2_surface())),)),
    "1b": Figure("pi-tangle of GHZ type I, lambda = 0.01 gamma0",
                 (("I", dict(state="ghz1", lambda_ratio=0.01, t_max=T_NM2, a2_grid=a2_surface())),)),
    "2a": Figure("pi-tangle of GHZ type II, lambda = 0.01 gamma0",
                 (("II", dict(state="ghz2", lambda_ratio=0.01, t_max=T_NM2, a2_grid=a2_surface())),)),
    "2b": Figure("pi-tangle of GHZ type III, lambda = 0.01 gamma0",
                 (("III", dict(state="ghz3", lambda_ratio=0.01, t_max=T_NM2, a2_grid=a2_surface())),)),
    "3a": Figure("GHZ types I-III at a^2 = 0.1, lambda = 0.001 gamma0",
                 tuple((lab, dict(state=s, lambda_ratio=0.001, t_max=T_NM3, a2=0.1))
                       for lab, s in (("I", "ghz1"), ("II", "ghz2"), ("III", "ghz3")))),
    "3b": Figure("GHZ types I-III at a^2 = 0.9, lambda = 0.001 gamma0",
                 tuple((lab, dict(state=s, lambda_ratio=0.001, t_max=T_NM3, a2=0.9))
                       for lab, s in (("I", "ghz1"), ("II", "ghz2"), ("III", "ghz3")))),
    "4": Figure("W types I and II, symmetric, lambda = 3 gamma0",
                (("W1", dict(state="w1", lambda_ratio=3.0, t_max=T_MARKOV)),
                 ("W2", dict(state="w2", lambda_ratio=3.0, t_max=T_MARKOV)))),
    "5a": Figure("W type I at c^2 = 1/3, lambda = 0.01 gamma0",
                 (("W1", dict(state="w1", lambda_ratio=0.01, t_max=T_NM2, c2=1 / 3,
                              a2_grid=a2_surface(2 / 3))),)),
    "5b": Figure("W types I and II, symmetric, lambda = 0.001 gamma0",
                 (("W1", dict(state="w1", lambda_ratio=0.001, t_max=T_NM3)),
                  ("W2", dict(state="w2", lambda_ratio=0.001, t_max=T_NM3)))),
    "6a": Figure("pairwise concurrences, symmetric W types, lambda = 3 gamma0",
                 (("W1", dict(state="w1", lambda_ratio=3.0, t_max=T_MARKOV)),
                  ("W2", dict(state="w2", lambda_ratio=3.0, t_max=T_MARKOV))),
                 quantities=("C_AB", "closed_C_AB", "C_AC", "closed_C_AC", "C_BC", "closed_C_BC")),
    "6b": Figure("pairwise concurrences, symmetric W types, lambda = 0.01 gamma0",
                 (("W1", dict(state="w1", lambda_ratio=0.01, t_max=T_NM2)),
                  ("W2", dict(state="w2", lambda_ratio=0.01, t_max=T_NM2))),
                 quantities=("C_AB", "closed_C_AB", "C_AC", "closed_C_AC", "C_BC", "closed_C_BC")),
}


def figure_tables(fig_id: str, steps: int = DEFAULT_STEPS, workers: int = 1) -> dict:
    """Run every series of a figure; returns ``{label: ResultTable}`` in series order."""
    if fig_id not in FIGURES:
        raise KeyError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}")
    return {
        label: run_sweep(SweepSpec(steps=steps, **kwargs), workers=workers)
        for label, kwargs in FIGURES[fig_id].series
    }


def combine(fig_id: str, tables: dict) -> ResultTable:
    names = list(next(iter(tables.values())).columns)
    cols = {"series": np.concatenate([[lab] * t.n_rows for lab, t in tables.items()]).astype(object)}
    for name in names:
        cols[name] = np.concatenate([t[name] for t in tables.values()])
    meta = {
        "figure": fig_id,
        "title": FIGURES[fig_id].title,
        "series": {lab: t.metadata for lab, t in tables.items()},
    }
    return ResultTable(cols, meta)


def write_long(path: Path, fig_id: str, tables: dict) -> None:
    quantities = FIGURES[fig_id].quantities
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["series", "a2", "gamma0_t", "quantity", "value"])
        for label, table in tables.items():
            a2 = table["a2"]
            t = table["gamma0_t"]
            for q in quantities:
                vals = table[q]
                for i in range(table.n_rows):
                    writer.writerow([label, repr(float(a2[i])), repr(float(t[i])), q, repr(float(vals[i]))])


def reproduce_figure(fig_id: str, out_dir, steps: int = DEFAULT_STEPS, workers: int = 1) -> list:
    """Write the wide and long CSV files for one figure; returns the written paths."""
    tables = figure_tables(fig_id, steps=steps, workers=workers)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    wide = out_dir / f"fig{fig_id}.csv"
    long = out_dir / f"fig{fig_id}_long.csv"
    emit(combine(fig_id, tables), wide, "csv")
    write_long(long, fig_id, tables)
    return [wide, long]
