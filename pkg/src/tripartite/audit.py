"""Closed-form versus numeric audit over parameter/time grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import concurrence_w_closed, pi_ghz_closed, pi_w1_closed, pi_w2_symmetric_closed
from .channel import evolve_three_direct, evolve_three_kraus
from .decoherence import ReservoirParams, amplitude
from .measures import measure_batch
from .states import GhzFamilySpec, WFamilySpec, make_ghz, make_w

AUDIT_RATIOS = (3.0, 0.01)
AUDIT_TMAX = {3.0: 5.0, 0.01: 100.0}
SEED = 20160101


@dataclass
class Check:
    name: str
    points: int = 0
    max_gap: float = 0.0
    worst: dict = field(default_factory=dict)
    violations: int = 0

    def record(self, gaps: np.ndarray, tolerance: float, where: dict, times=None):
        gaps = np.atleast_1d(np.asarray(gaps, dtype=float))
        self.points += gaps.size
        self.violations += int(np.sum(gaps > tolerance))
        k = int(np.argmax(gaps))
        if gaps[k] > self.max_gap or not self.worst:
            self.max_gap = float(gaps[k])
            self.worst = dict(where)
            if times is not None:
                self.worst["gamma0_t"] = float(np.atleast_1d(times)[k])

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass
class AuditReport:
    tolerance: float
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def worst(self) -> Check:
        return max(self.checks, key=lambda c: c.max_gap)

    def lines(self) -> list:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            out.append(f"{status} {c.name}: {c.points} points, max gap {c.max_gap:.3e}, "
                       f"{c.violations} over {self.tolerance:g}; worst at {c.worst}")
        return out


def _random_density(rng, dim=8) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def audit(tolerance: float = 1e-9, n_params: int = 20, n_times: int = 30,
          n_channel_states: int = 20, seed: int = SEED) -> AuditReport:
    """Compare every closed form against the numeric engine.

    Per family and reservoir regime, ``n_params`` parameter points times
    ``n_times`` time points are checked; families: GHZ I-IV, W1 with random
    amplitudes and phases, W2 symmetric, plus W1/W2 pairwise concurrences and
    the table-versus-Kraus channel equivalence.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if n_params < 1 or n_times < 1:
        raise ValueError("audit grid is empty")
    rng = np.random.default_rng(seed)
    a2_grid = np.linspace(0.0, 1.0, n_params)
    w_points = []
    for _ in range(n_params):
        a2, b2, c2 = rng.dirichlet([1.0, 1.0, 1.0])
        d1, d2 = rng.uniform(0, 2 * math.pi, 2)
        w_points.append(WFamilySpec.from_squares("W1", a2, b2, c2, d1, d2))

    checks = {name: Check(name) for name in (
        "pi GHZ-I", "pi GHZ-II", "pi GHZ-III", "pi GHZ-IV", "pi W1", "pi W2-symmetric",
        "two-tangles GHZ", "concurrence W1", "concurrence W2", "channel table vs Kraus")}

    for ratio in AUDIT_RATIOS:
        res = ReservoirParams.from_ratio(ratio)
        times = np.linspace(0.0, AUDIT_TMAX[ratio], n_times)
        P = np.asarray(amplitude(times, res), dtype=float)
        for family in ("I", "II", "III", "IV"):
            for a2 in a2_grid:
                rho0 = make_ghz(GhzFamilySpec.from_a2(family, a2, delta=0.3))
                m = measure_batch(evolve_three_direct(rho0, P), concurrences=False)
                closed = pi_ghz_closed(family, a2, P)
                where = {"lambda_ratio": ratio, "a2": float(a2)}
                checks[f"pi GHZ-{family}"].record(np.abs(closed.pi - m["pi"]), tolerance, where, times)
                pairs = np.max([m["N_AB"], m["N_AC"], m["N_BC"]], axis=0)
                checks["two-tangles GHZ"].record(pairs, tolerance, dict(where, family=family), times)
        for spec in w_points:
            for fam in ("W1", "W2"):
                s = WFamilySpec(fam, spec.a, spec.b, spec.c, spec.delta1, spec.delta2)
                m = measure_batch(evolve_three_direct(make_w(s), P))
                where = {"lambda_ratio": ratio, "a2": s.a**2, "b2": s.b**2, "c2": s.c**2}
                if fam == "W1":
                    closed = pi_w1_closed(s.a, s.b, s.c, P)
                    checks["pi W1"].record(np.abs(closed.pi - m["pi"]), tolerance, where, times)
                cc = concurrence_w_closed(fam, s.a, s.b, s.c, P)
                gap = np.max([np.abs(cc[i] - m[k]) for i, k in enumerate(("C_AB", "C_AC", "C_BC"))], axis=0)
                checks[f"concurrence {fam}"].record(gap, tolerance, where, times)
        sym = WFamilySpec.symmetric("W2", 0.4, 1.1)
        # the symmetric W2 closed form has a single parameter point; repeat over
        # phase choices so the grid matches the other families
        for k in range(n_params):
            s = WFamilySpec.symmetric("W2", 0.1 * k, 0.37 * k) if k else sym
            m = measure_batch(evolve_three_direct(make_w(s), P), concurrences=False)
            gap = np.abs(pi_w2_symmetric_closed(P).pi - m["pi"])
            checks["pi W2-symmetric"].record(gap, tolerance, {"lambda_ratio": ratio, "delta1": s.delta1,
                                                               "delta2": s.delta2}, times)

    for k in range(n_channel_states):
        rho = _random_density(rng)
        for P in rng.uniform(-1, 1, 10):
            gap = np.abs(evolve_three_direct(rho, P) - evolve_three_kraus(rho, P)).max()
            checks["channel table vs Kraus"].record(gap, tolerance, {"state": k, "P": float(P)})

    return AuditReport(tolerance, list(checks.values()))
