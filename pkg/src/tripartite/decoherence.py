"""Decoherence amplitude P_t of a qubit in a Lorentzian (damped Jaynes-Cummings) reservoir.

Times are in the same units as ``1/gamma0``; with ``gamma0 = 1`` the time
argument is the dimensionless ``gamma0 * t`` used throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class RegimeError(ValueError):
    """Raised when a regime-specific formula is used outside its regime."""


MARKOVIAN = "markovian"
NON_MARKOVIAN = "non-markovian"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class ReservoirParams:
    """Coupling ``gamma0`` (1/tau_R) and spectral width ``lam`` (1/tau_B)."""

    gamma0: float
    lam: float

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0):
            raise ValueError(f"gamma0 and lambda must be positive, got {self.gamma0}, {self.lam}")

    @classmethod
    def from_ratio(cls, ratio: float, gamma0: float = 1.0) -> "ReservoirParams":
        return cls(gamma0=gamma0, lam=ratio * gamma0)

    @property
    def ratio(self) -> float:
        return self.lam / self.gamma0

    @property
    def regime(self) -> str:
        gap = self.lam - 2.0 * self.gamma0
        if abs(gap) <= 1e-14 * self.lam:
            return BOUNDARY
        return MARKOVIAN if gap > 0 else NON_MARKOVIAN

    @property
    def dbar(self) -> float:
        """sqrt(lam^2 - 2 gamma0 lam), real in the Markovian regime."""
        return math.sqrt(max(self.lam**2 - 2 * self.gamma0 * self.lam, 0.0))

    @property
    def d(self) -> float:
        """sqrt(2 gamma0 lam - lam^2), real in the non-Markovian regime."""
        return math.sqrt(max(2 * self.gamma0 * self.lam - self.lam**2, 0.0))


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be nonnegative")
    return t


def _out(values: np.ndarray, t):
    return float(values) if np.ndim(t) == 0 else values


def amplitude_markovian(t, p: ReservoirParams):
    """P_t = e^{-lam t/2}[cosh(dbar t/2) + (lam/dbar) sinh(dbar t/2)] for lam > 2 gamma0."""
    if p.regime != MARKOVIAN:
        raise RegimeError(f"lambda/gamma0 = {p.ratio} is not in the Markovian regime")
    tt = _times(t)
    lam, db = p.lam, p.dbar
    # exponentials combined so that large lam*t neither overflows nor gives inf*0
    slow = np.exp(-(lam - db) * tt / 2)
    fast = np.exp(-(lam + db) * tt / 2)
    vals = 0.5 * (slow + fast) + (lam / db) * 0.5 * (slow - fast)
    return _out(vals, t)


def amplitude_nonmarkovian(t, p: ReservoirParams):
    """P_t = e^{-lam t/2}[cos(d t/2) + (lam/d) sin(d t/2)] for lam < 2 gamma0."""
    if p.regime != NON_MARKOVIAN:
        raise RegimeError(f"lambda/gamma0 = {p.ratio} is not in the non-Markovian regime")
    tt = _times(t)
    lam, d = p.lam, p.d
    vals = np.exp(-lam * tt / 2) * (np.cos(d * tt / 2) + (lam / d) * np.sin(d * tt / 2))
    return _out(vals, t)


def amplitude(t, p: ReservoirParams):
    """P_t in whichever regime ``p`` lies; the critical point uses the analytic limit."""
    regime = p.regime
    if regime == MARKOVIAN:
        return amplitude_markovian(t, p)
    if regime == NON_MARKOVIAN:
        return amplitude_nonmarkovian(t, p)
    tt = _times(t)
    x = p.lam * tt / 2
    return _out(np.exp(-x) * (1 + x), t)


def memory_kernel(dt, p: ReservoirParams):
    """Reservoir correlation function f(dt) = (gamma0 lam / 2) e^{-lam |dt|}."""
    dt_arr = np.asarray(dt, dtype=float)
    vals = 0.5 * p.gamma0 * p.lam * np.exp(-p.lam * np.abs(dt_arr))
    return _out(vals, dt)


def amplitude_ode_oracle(t_max: float, steps: int, p: ReservoirParams) -> np.ndarray:
    """Integrate P'' + lam P' + (gamma0 lam/2) P = 0, P(0)=1, P'(0)=0 with classical RK4.

    This is the integro-differential equation dP/dt = -int_0^t f(t-s) P(s) ds
    with the exponential kernel, differentiated once.  Returns P on the
    uniform grid ``linspace(0, t_max, steps + 1)``.
    """
    if steps <= 0:
        raise ValueError("steps must be positive")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    h = t_max / steps
    lam = p.lam
    w2 = 0.5 * p.gamma0 * p.lam

    def rhs(y0, y1):
        return y1, -lam * y1 - w2 * y0

    out = np.empty(steps + 1)
    y0, y1 = 1.0, 0.0
    out[0] = y0
    for k in range(1, steps + 1):
        a0, a1 = rhs(y0, y1)
        b0, b1 = rhs(y0 + 0.5 * h * a0, y1 + 0.5 * h * a1)
        c0, c1 = rhs(y0 + 0.5 * h * b0, y1 + 0.5 * h * b1)
        d0, d1 = rhs(y0 + h * c0, y1 + h * c1)
        y0 += h * (a0 + 2 * b0 + 2 * c0 + d0) / 6
        y1 += h * (a1 + 2 * b1 + 2 * c1 + d1) / 6
        out[k] = y0
    return out


def amplitude_zeros(p: ReservoirParams, n_max: int) -> np.ndarray:
    """Zeros t_n = (2/d)[n pi - arctan(d/lam)], n = 1..n_max, of the oscillating P_t.

    Each root is checked to be a sign change of the closed form.
    """
    if p.regime != NON_MARKOVIAN:
        raise RegimeError("P_t has no zeros outside the non-Markovian regime")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    d, lam = p.d, p.lam
    n = np.arange(1, n_max + 1)
    roots = (2.0 / d) * (n * np.pi - math.atan(d / lam))
    # sign test on the oscillating factor only; the envelope underflows long before the roots end
    eps = 1e-6 * (2 * np.pi / d)
    osc = lambda t: np.cos(d * t / 2) + (lam / d) * np.sin(d * t / 2)  # noqa: E731
    if np.any(osc(roots - eps) * osc(roots + eps) >= 0):
        raise ArithmeticError("closed-form zero failed the sign-change check")
    return roots
