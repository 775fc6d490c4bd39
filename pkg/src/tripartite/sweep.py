"""Sweep engine: evolve initial states over parameter/time grids and tabulate measures.

Time is always the dimensionless ``gamma0 * t`` (``gamma0 = 1`` internally).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .catalog import closed_pi, concurrence_w_closed, tau_upper_bound
from .channel import evolve_three_direct
from .decoherence import ReservoirParams, amplitude
from .measures import measure_batch
from .states import (
    GhzFamilySpec,
    MixtureSpec,
    WFamilySpec,
    make_ghz,
    make_mixture,
    make_w,
)

GHZ_STATES = {"ghz1": "I", "ghz2": "II", "ghz3": "III", "ghz4": "IV"}
W_STATES = {"w1": "W1", "w2": "W2"}
STATES = tuple(GHZ_STATES) + tuple(W_STATES) + ("mixture",)

DEFAULT_STEPS = 501
DEFAULT_TOLERANCE = 1e-9


class SpecError(ValueError):
    """Invalid sweep specification."""


@dataclass
class SweepSpec:
    """One initial-state family on a reservoir, a time grid and an optional parameter grid.

    For W states, ``a2_grid`` varies a^2 at fixed c^2 (b^2 = 1 - a^2 - c^2).
    For the mixture, ``p_grid`` varies the GHZ weight.
    """

    state: str
    lambda_ratio: float = 3.0
    t_max: float = 5.0
    steps: int = DEFAULT_STEPS
    a2: Optional[float] = None
    b2: Optional[float] = None
    c2: Optional[float] = None
    delta: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    p: float = 0.5
    a2_grid: Optional[list] = None
    p_grid: Optional[list] = None

    def __post_init__(self):
        if self.state not in STATES:
            raise SpecError(f"unknown state {self.state!r}; choose from {', '.join(STATES)}")
        if self.steps < 2:
            raise SpecError("steps must be at least 2")
        if not self.t_max > 0:
            raise SpecError("t_max must be positive")
        if not self.lambda_ratio > 0:
            raise SpecError("lambda_ratio must be positive")
        for name in ("a2_grid", "p_grid"):
            grid = getattr(self, name)
            if grid is not None:
                if len(grid) == 0:
                    raise SpecError(f"{name} is empty")
                setattr(self, name, sorted(float(v) for v in grid))

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @property
    def reservoir(self) -> ReservoirParams:
        return ReservoirParams.from_ratio(self.lambda_ratio)

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)

    def points(self) -> list:
        """(parameter columns, initial state, closed-form parameters) per grid point."""
        out = []
        if self.state in GHZ_STATES:
            grid = self.a2_grid if self.a2_grid is not None else [0.5 if self.a2 is None else self.a2]
            for a2 in grid:
                spec = GhzFamilySpec.from_a2(GHZ_STATES[self.state], a2, self.delta)
                out.append(({"a2": a2, "b2": 1 - a2}, make_ghz(spec), {"a2": a2}))
        elif self.state in W_STATES:
            grid = self.a2_grid if self.a2_grid is not None else [self.a2]
            for a2 in grid:
                a2_, b2_, c2_ = self._w_squares(a2)
                spec = WFamilySpec.from_squares(W_STATES[self.state], a2_, b2_, c2_, self.delta1, self.delta2)
                params = {"a": spec.a, "b": spec.b, "c": spec.c}
                out.append(({"a2": a2_, "b2": b2_, "c2": c2_}, make_w(spec), params))
        else:
            grid = self.p_grid if self.p_grid is not None else [self.p]
            for p in grid:
                out.append(({"p": p}, make_mixture(MixtureSpec(p)), {}))
        return out

    def _w_squares(self, a2):
        if a2 is None:
            if self.b2 is not None or self.c2 is not None:
                raise SpecError("give a2 together with b2/c2 for W states")
            return 1 / 3, 1 / 3, 1 / 3
        if self.c2 is not None:
            c2 = self.c2
            b2 = 1 - a2 - c2 if self.b2 is None or self.a2_grid is not None else self.b2
        elif self.b2 is not None:
            b2, c2 = self.b2, 1 - a2 - self.b2
        else:
            b2 = c2 = (1 - a2) / 2
        if min(a2, b2, c2) < -1e-12 or abs(a2 + b2 + c2 - 1) > 1e-12:
            raise SpecError(f"W amplitudes a2={a2}, b2={b2}, c2={c2} are not a valid split of 1")
        return a2, max(b2, 0.0), max(c2, 0.0)


@dataclass
class ResultTable:
    columns: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have unequal lengths {sorted(lengths)}")

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __getitem__(self, name: str) -> np.ndarray:
        return np.asarray(self.columns[name])


def _evaluate_point(spec: SweepSpec, point, times: np.ndarray) -> dict:
    param_cols, rho0, closed_params = point
    P = np.asarray(amplitude(times, spec.reservoir), dtype=float)
    rhos = evolve_three_direct(rho0, P)
    meas = measure_batch(rhos)
    n = len(times)
    cols = {"gamma0_t": times}
    for k, v in param_cols.items():
        cols[k] = np.full(n, float(v))
    cols["P_t"] = P
    cols.update(meas)
    cpi = closed_pi(spec.state, closed_params, P)
    if cpi is not None:
        cols["closed_form_pi"] = np.asarray(cpi, dtype=float)
        cols["abs_gap"] = np.abs(cols["closed_form_pi"] - cols["pi"])
    if spec.state in ("ghz1", "ghz2", "ghz3"):
        cols["tau_upper"] = np.asarray(tau_upper_bound(GHZ_STATES[spec.state], closed_params["a2"], P))
    if spec.state in W_STATES:
        closed_c = concurrence_w_closed(W_STATES[spec.state], closed_params["a"], closed_params["b"],
                                        closed_params["c"], P)
        for name, v in zip(("closed_C_AB", "closed_C_AC", "closed_C_BC"), closed_c):
            cols[name] = np.asarray(v, dtype=float)
        cols["concurrence_gap"] = np.max(
            [np.abs(cols[f"closed_C_{k}"] - cols[f"C_{k}"]) for k in ("AB", "AC", "BC")], axis=0
        )
    return cols


def run_sweep(spec: SweepSpec, workers: int = 1) -> ResultTable:
    """Evaluate every (parameter, time) point; rows are ordered by parameter, then time."""
    times = spec.times()
    points = spec.points()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda pt: _evaluate_point(spec, pt, times), points))
    else:
        parts = [_evaluate_point(spec, pt, times) for pt in points]
    columns = {k: np.concatenate([part[k] for part in parts]) for k in parts[0]}
    meta = {
        "engine": f"tripartite {__version__}",
        "state": spec.state,
        "lambda_ratio": spec.lambda_ratio,
        "regime": spec.reservoir.regime,
        "spec": asdict(spec),
        "tolerances": {"closed_form_gap": DEFAULT_TOLERANCE},
    }
    return ResultTable(columns, meta)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return repr(float(v))


def to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    names = list(table.columns)
    writer.writerow(names)
    cols = [table.columns[n] for n in names]
    for i in range(table.n_rows):
        writer.writerow([_fmt(c[i]) for c in cols])
    return buf.getvalue()


def to_json(table: ResultTable) -> str:
    cols = {
        k: [v if isinstance(v, str) else float(v) for v in vals] for k, vals in table.columns.items()
    }
    return json.dumps({"metadata": table.metadata, "columns": cols}, indent=1)


def emit(table: ResultTable, out, fmt: str = "csv", manifest: bool = True) -> Optional[Path]:
    """Write ``table`` as CSV or JSON to ``out`` (a path, or '-' for stdout).

    CSV output carries no metadata; with ``manifest`` a ``<out>.meta.json``
    sidecar holds the run manifest instead.
    """
    if fmt == "csv":
        text = to_csv(table)
    elif fmt == "json":
        text = to_json(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out in (None, "-"):
        sys.stdout.write(text)
        return None
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        # newline="" keeps the csv module's CRLF row terminators intact
        with open(path, "w", newline="") as fh:
            fh.write(text)
        if fmt == "csv" and manifest:
            meta_path = path.with_name(path.name + ".meta.json")
            meta_path.write_text(json.dumps(table.metadata, indent=1, sort_keys=True))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def read_json(path) -> ResultTable:
    data = json.loads(Path(path).read_text())
    cols = {k: np.asarray(v) for k, v in data["columns"].items()}
    return ResultTable(cols, data["metadata"])
