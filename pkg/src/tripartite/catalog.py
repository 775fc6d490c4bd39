"""Closed-form entanglement dynamics of the GHZ- and W-type families.

All functions take the decoherence amplitude ``P`` (scalar or array) rather
than a time, so they apply to either reservoir regime.  ``x = P^2`` and
``y = 1 - P^2`` below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from .decoherence import MARKOVIAN, RegimeError, ReservoirParams, amplitude
from .linalg import InvalidStateError, ket, projector
from .states import GHZ_SUPPORT

GHZ_FAMILIES = ("I", "II", "III", "IV")
W2_KNEE = 2 - math.sqrt(2)


class ClosedForm(NamedTuple):
    n_one_vs_rest: tuple
    n_pairs: tuple
    pi: object


@dataclass
class SpectralDecomposition:
    weights: np.ndarray
    vectors: np.ndarray  # shape (k, 8), one unit vector per row

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return np.einsum("k,ki,kj->ij", self.weights, v, v.conj())


def _check_a2(a2: float):
    if not 0 <= a2 <= 1:
        raise ValueError(f"a^2 must lie in [0, 1], got {a2}")


def _arr(P):
    P = np.asarray(P, dtype=float)
    return P, P * P, 1.0 - P * P


def _ret(val, P):
    return float(val) if np.ndim(P) == 0 else val


def q_function(a2: float, P):
    """Q = sqrt(b^4 x^2 y^2 (1-2x)^2 + 4 a^2 b^2 x^3) - b^2 x y; the type-I negativity is max(Q, 0)."""
    _check_a2(a2)
    _, x, y = _arr(P)
    b2 = 1 - a2
    q = np.sqrt(b2**2 * x**2 * y**2 * (1 - 2 * x) ** 2 + 4 * a2 * b2 * x**3) - b2 * x * y
    return _ret(q, P)


def esd_condition(a2: float, P):
    """True where a^2 <= y^3 / (1 + y^3), i.e. where the type-I pi-tangle vanishes."""
    _check_a2(a2)
    _, _, y = _arr(P)
    cond = a2 <= y**3 / (1 + y**3)
    return bool(cond) if np.ndim(P) == 0 else cond


def esd_time(a2: float, p: ReservoirParams, t_max: float = 50.0, scan: int = 5001) -> Optional[float]:
    """Earliest gamma0*t at which the type-I state loses all tripartite entanglement.

    Markovian reservoirs only.  Returns ``None`` when the ESD inequality is
    never met on ``[0, t_max / gamma0]``.
    """
    _check_a2(a2)
    if p.regime != MARKOVIAN:
        raise RegimeError("esd_time is defined for Markovian reservoirs only")
    if esd_condition(a2, 1.0):
        return 0.0

    def margin(t):
        y = 1 - amplitude(t, p) ** 2
        return a2 - y**3 / (1 + y**3)

    grid = np.linspace(0.0, t_max / p.gamma0, scan)
    vals = np.array([margin(t) for t in grid])
    hit = np.flatnonzero(vals <= 0)
    if hit.size == 0:
        return None
    k = hit[0]
    t_star = brentq(margin, grid[k - 1], grid[k], xtol=1e-12, rtol=1e-10)
    return t_star * p.gamma0


def _ghz2_components(a2, x, y):
    b2 = 1 - a2
    n_ab = np.sqrt(b2**2 * x**2 * y**2 + 4 * a2 * b2 * x**3) - b2 * x * y
    u = y * (a2 + b2 * y)
    n_c = np.sqrt(u**2 + 4 * a2 * b2 * x**3) - u
    return n_ab, n_c


def pi_ghz_closed(family: str, a2: float, P) -> ClosedForm:
    """One-vs-rest negativities and pi-tangle of an evolved GHZ-family state.

    Pairwise negativities vanish for every family.  Family IV is family II
    with qubits B and C exchanged, so its pi-tangle is family II's.
    """
    _check_a2(a2)
    _, x, y = _arr(P)
    zero = np.zeros_like(x)
    if family == "I":
        n = np.maximum(q_function(a2, np.asarray(P, dtype=float)), 0.0)
        ones = (n, n, n)
        pi = n**2
    elif family in ("II", "IV"):
        n_ab, n_c = _ghz2_components(a2, x, y)
        ones = (n_ab, n_ab, n_c) if family == "II" else (n_ab, n_c, n_ab)
        pi = (2 * n_ab**2 + n_c**2) / 3
    elif family == "III":
        b2 = 1 - a2
        u = y * (a2 * y + b2)
        n_a = np.sqrt(u**2 + 4 * a2 * b2 * x**3) - u
        n_bc = np.sqrt(a2**2 * x**2 * y**2 + 4 * a2 * b2 * x**3) - a2 * x * y
        ones = (n_a, n_bc, n_bc)
        pi = (n_a**2 + 2 * n_bc**2) / 3
    else:
        raise ValueError(f"unknown GHZ family {family!r}")
    conv = (lambda v: _ret(v, P))
    return ClosedForm(tuple(conv(v) for v in ones), (conv(zero),) * 3, conv(pi))


def _type1_eigensystem(a2, P):
    """Weights and (unnormalised) components of the two non-basis eigenvectors of the type-I state."""
    x, y = P * P, 1 - P * P
    b2 = 1 - a2
    trace2 = 1 - 3 * b2 * x * y
    # determinant of the {|0>, |7>} block is b^4 x^3 y^3
    root = np.sqrt(np.maximum(trace2**2 - 4 * b2**2 * x**3 * y**3, 0.0))
    lam_p = 0.5 * (trace2 + root)
    lam_m = 0.5 * (trace2 - root)
    eta = 2 * math.sqrt(a2 * b2) * P**3
    # diff = rho_00 - rho_77; xi = diff + root cancels when diff < 0, so use
    # the equivalent eta^2 / (root - diff) there
    diff = 1 - b2 * x * (3 - 3 * x + 2 * x**2)
    with np.errstate(invalid="ignore", divide="ignore"):
        alt = np.where(root - diff > 0, eta**2 / np.where(root - diff > 0, root - diff, 1.0), 0.0)
    xi = np.where(diff >= 0, diff + root, alt)
    if np.ndim(xi) == 0:
        xi = float(xi)
    return trace2, lam_p, lam_m, xi, eta


def tau_upper_bound(family: str, a2: float, P):
    """Upper bound on the residual entanglement from the spectral decomposition."""
    _check_a2(a2)
    P_arr, x, y = _arr(P)
    b2 = 1 - a2
    with np.errstate(invalid="ignore", divide="ignore"):
        if family == "I":
            trace2, _, _, xi, eta = _type1_eigensystem(a2, P_arr)
            num = trace2 * 4 * xi**2 * eta**2
            den = (xi**2 + eta**2) ** 2
        elif family == "II":
            num = 4 * a2 * b2 * x**2
            den = a2 + b2 * x
        elif family == "III":
            num = 4 * a2 * b2 * x**2
            den = a2 * x + b2
        else:
            raise ValueError(f"unknown GHZ family {family!r} for tau_upper_bound")
        val = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return _ret(val, P)


def spectral_ghz(family: str, a2: float, delta: float, P: float) -> SpectralDecomposition:
    """Eigen-decomposition of the evolved GHZ-family state (families I-III)."""
    _check_a2(a2)
    P = float(P)
    x, y = P * P, 1 - P * P
    a, b = math.sqrt(a2), math.sqrt(1 - a2)
    b2 = 1 - a2
    phase = np.exp(1j * delta)
    weights, vecs = [], []
    if family == "I":
        _, lam_p, lam_m, xi, eta = _type1_eigensystem(a2, P)
        norm = math.hypot(xi, eta)
        if norm == 0:
            # only when a = 0 and P = +-1: the state is |7><7|
            xi, eta, norm = 0.0, 1.0, 1.0
        psi1 = (xi * ket(0) + eta * phase * ket(7)) / norm
        psi2 = (eta * ket(0) - xi * phase * ket(7)) / norm
        weights += [lam_p, lam_m]
        vecs += [psi1, psi2]
        weights += [b2 * x * y**2] * 3 + [b2 * x**2 * y] * 3
        vecs += [ket(i) for i in (1, 2, 4, 3, 5, 6)]
    elif family == "II":
        lam2 = x * (a2 + b2 * x)
        s = math.sqrt(a2 + b2 * x)
        # s = 0 only with zero weight; any unit vector then does
        v = (a * ket(1) + b * P * phase * ket(6)) / s if s else ket(1)
        weights += [lam2, y * (a2 + b2 * y), b2 * x * y, b2 * x * y]
        vecs += [v, ket(0), ket(2), ket(4)]
    elif family == "III":
        lam3 = x * (a2 * x + b2)
        s = math.sqrt(a2 * x + b2)
        v = (a * P * ket(3) + b * phase * ket(4)) / s if s else ket(3)
        weights += [lam3, y * (a2 * y + b2), a2 * x * y, a2 * x * y]
        vecs += [v, ket(0), ket(1), ket(2)]
    else:
        raise ValueError(f"unknown GHZ family {family!r} for spectral_ghz")
    return SpectralDecomposition(np.array(weights, dtype=float), np.array(vecs))


def _check_w(a, b, c):
    if abs(a * a + b * b + c * c - 1) > 1e-12:
        raise InvalidStateError("a^2 + b^2 + c^2 must equal 1")


def pi_w1_closed(a: float, b: float, c: float, P) -> ClosedForm:
    """Negativities and pi-tangle of the evolved W1 state a|001> + b|010> + c|100> (phases drop out)."""
    _check_w(a, b, c)
    _, x, y = _arr(P)
    a2, b2, c2 = a * a, b * b, c * c
    n_a = np.sqrt(y**2 + 4 * c2 * (a2 + b2) * x**2) - y
    n_b = np.sqrt(y**2 + 4 * b2 * (a2 + c2) * x**2) - y
    n_c = np.sqrt(y**2 + 4 * a2 * (b2 + c2) * x**2) - y

    def pair(u, w):
        s = y + u * x
        return np.sqrt(s**2 + 4 * w * x**2) - s

    n_ab, n_ac, n_bc = pair(a2, b2 * c2), pair(b2, a2 * c2), pair(c2, a2 * b2)

    def cross(u, w):
        s = y + u * x
        return 2 * s * np.sqrt(s**2 + 4 * w * x**2)

    pi = (2 / 3) * (
        cross(a2, b2 * c2) + cross(b2, a2 * c2) + cross(c2, a2 * b2)
        - y * (
            np.sqrt(y**2 + 4 * a2 * (b2 + c2) * x**2)
            + np.sqrt(y**2 + 4 * b2 * (a2 + c2) * x**2)
            + np.sqrt(y**2 + 4 * c2 * (a2 + b2) * x**2)
        )
        - 2 * (a2**2 + b2**2 + c2**2) * x**2
        - y * (3 + x)
    )
    conv = (lambda v: _ret(v, P))
    return ClosedForm(
        (conv(n_a), conv(n_b), conv(n_c)), (conv(n_ab), conv(n_ac), conv(n_bc)), conv(pi)
    )


def pi_w1_initial(a: float, b: float, c: float) -> float:
    """pi-tangle of the pure W1-class state, the P = 1 limit of :func:`pi_w1_closed`."""
    _check_w(a, b, c)
    a2, b2, c2 = a * a, b * b, c * c
    return (4 / 3) * (
        a2 * math.sqrt(a2**2 + 4 * b2 * c2)
        + b2 * math.sqrt(b2**2 + 4 * a2 * c2)
        + c2 * math.sqrt(c2**2 + 4 * a2 * b2)
        - (a2**2 + b2**2 + c2**2)
    )


def pi_w2_symmetric_closed(P) -> ClosedForm:
    """Evolved W2 state with a^2 = b^2 = c^2 = 1/3: all cuts and all pairs coincide."""
    _, x, y = _arr(P)
    n = (x / 3) * (np.sqrt(9 - 18 * x + 17 * x**2) - 3 * y)
    with np.errstate(invalid="ignore"):
        upper = (np.sqrt(9 - 24 * x + 20 * x**2) + 2 * x * (2 - x)) / 3 - 1
    n_pair = np.where(x >= W2_KNEE, upper, 0.0)
    pi = n**2 - 2 * n_pair**2
    n, n_pair, pi = (_ret(v, P) for v in (n, n_pair, pi))
    return ClosedForm((n, n, n), (n_pair, n_pair, n_pair), pi)


def sigma_w2(a, b, c, delta1=0.0, delta2=0.0) -> np.ndarray:
    """The single-decay block sigma_II of the evolved W2 state, as an 8x8 matrix."""
    s = np.zeros((8, 8), dtype=complex)
    s[1, 1] = b * b + c * c
    s[2, 2] = a * a + c * c
    s[4, 4] = a * a + b * b
    s[1, 2] = a * b * np.exp(1j * delta1)
    s[1, 4] = a * c * np.exp(1j * delta2)
    s[2, 4] = b * c * np.exp(-1j * (delta1 - delta2))
    s[2, 1], s[4, 1], s[4, 2] = np.conj(s[1, 2]), np.conj(s[1, 4]), np.conj(s[2, 4])
    return s / 2


def sigma_w2_spectral(delta1: float = 0.0, delta2: float = 0.0) -> SpectralDecomposition:
    """Eigen-decomposition of sigma_II for symmetric amplitudes: weights 2/3, 1/6, 1/6."""
    e1, e2 = np.exp(-1j * delta1), np.exp(-1j * delta2)
    alpha1 = (ket(1) + e1 * ket(2) + e2 * ket(4)) / math.sqrt(3)
    alpha2 = (ket(1) - e2 * ket(4)) / math.sqrt(2)
    alpha3 = (ket(1) - 2 * e1 * ket(2) + e2 * ket(4)) / math.sqrt(6)
    return SpectralDecomposition(np.array([2 / 3, 1 / 6, 1 / 6]), np.array([alpha1, alpha2, alpha3]))


def rho_w2_closed(a, b, c, delta1, delta2, P: float) -> np.ndarray:
    """Evolved W2 state assembled as y^2|0><0| + x^2|W2><W2| + 2 x y sigma_II."""
    _check_w(a, b, c)
    x, y = P * P, 1 - P * P
    w2 = np.zeros(8, dtype=complex)
    w2[6], w2[5], w2[3] = a, b * np.exp(1j * delta1), c * np.exp(1j * delta2)
    return y**2 * projector(ket(0)) + x**2 * projector(w2) + 2 * x * y * sigma_w2(a, b, c, delta1, delta2)


def concurrence_w_closed(family: str, a: float, b: float, c: float, P) -> tuple:
    """Pairwise concurrences (C_AB, C_AC, C_BC) of the evolved W1 or W2 state."""
    _check_w(a, b, c)
    _, x, y = _arr(P)
    a, b, c = abs(a), abs(b), abs(c)
    if family == "W1":
        vals = (2 * b * c * x, 2 * a * c * x, 2 * a * b * x)
    elif family == "W2":
        def term(p, q, r):
            return 2 * x * np.maximum(0.0, p * q - r * np.sqrt(y * (1 - r * r * x)))
        vals = (term(b, c, a), term(a, c, b), term(a, b, c))
    else:
        raise ValueError(f"unknown W family {family!r}")
    return tuple(_ret(v, P) for v in vals)


def closed_pi(state: str, params: dict, P):
    """Closed-form pi-tangle for a sweep state label, or ``None`` if the family has none."""
    if state in ("ghz1", "ghz2", "ghz3", "ghz4"):
        family = {"ghz1": "I", "ghz2": "II", "ghz3": "III", "ghz4": "IV"}[state]
        return pi_ghz_closed(family, params["a2"], P).pi
    if state == "w1":
        return pi_w1_closed(params["a"], params["b"], params["c"], P).pi
    if state == "w2" and all(abs(params[k] ** 2 - 1 / 3) <= 1e-12 for k in "abc"):
        return pi_w2_symmetric_closed(P).pi
    return None


__all__ = [
    "ClosedForm", "SpectralDecomposition", "GHZ_FAMILIES", "GHZ_SUPPORT", "W2_KNEE",
    "q_function", "esd_condition", "esd_time", "pi_ghz_closed", "tau_upper_bound",
    "spectral_ghz", "pi_w1_closed", "pi_w1_initial", "pi_w2_symmetric_closed",
    "sigma_w2", "sigma_w2_spectral", "rho_w2_closed", "concurrence_w_closed", "closed_pi",
]
