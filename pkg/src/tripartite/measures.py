"""Entanglement measures computed numerically from density matrices."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np

from .linalg import (
    QUBITS,
    SIGMA_Y,
    InvalidStateError,
    Qubit,
    kron,
    partial_trace,
    partial_transpose,
    qubit_slot,
    require_density,
    trace_norm,
)

PAIRS = (("A", "B"), ("A", "C"), ("B", "C"))

_YY = kron(SIGMA_Y, SIGMA_Y)


def _clamp(n: np.ndarray) -> np.ndarray:
    # ||rho^T|| >= 1 for valid states; anything below is rounding
    return np.maximum(np.asarray(n, dtype=float), 0.0)


def _negativity(rho: np.ndarray, q: Qubit) -> np.ndarray:
    return _clamp(trace_norm(partial_transpose(rho, q)) - 1.0)


def _two_tangle(rho: np.ndarray, pair) -> np.ndarray:
    first, second = pair
    if qubit_slot(first, 3) == qubit_slot(second, 3):
        raise ValueError(f"pair needs two distinct qubits, got {pair}")
    reduced = partial_trace(rho, (first, second))
    # the reduced register keeps register order, so locate `first` inside it
    slot = 0 if qubit_slot(first, 3) < qubit_slot(second, 3) else 1
    return _negativity(reduced, slot)


def negativity(rho: np.ndarray, q: Qubit) -> float:
    """Global negativity ||rho^{T_q}|| - 1 for the cut q | rest."""
    rho = require_density(rho, 3)
    return float(_negativity(rho, q))


def two_tangle(rho: np.ndarray, pair) -> float:
    """Negativity of the two-qubit reduction onto ``pair``, transposing its first qubit."""
    rho = require_density(rho, 3)
    return float(_two_tangle(rho, pair))


@dataclass
class MeasureReport:
    """Measures of one 3-qubit state (or a stack of states, field-wise arrays)."""

    n_one_vs_rest: tuple
    n_pairs: tuple
    pi_abc: tuple
    pi: object
    concurrences: tuple | None = None
    ckw_margin: object = None

    @property
    def pi_components_nonnegative(self) -> bool:
        return all(np.all(np.asarray(p) >= -1e-12) for p in self.pi_abc)

    def as_dict(self) -> dict:
        return asdict(self)


def _pi_parts(rho: np.ndarray):
    nA, nB, nC = (_negativity(rho, q) for q in QUBITS)
    nAB, nAC, nBC = (_two_tangle(rho, pr) for pr in PAIRS)
    pA = nA**2 - (nAB**2 + nAC**2)
    pB = nB**2 - (nAB**2 + nBC**2)
    pC = nC**2 - (nAC**2 + nBC**2)
    return (nA, nB, nC), (nAB, nAC, nBC), (pA, pB, pC), (pA + pB + pC) / 3


def pi_tangle(rho: np.ndarray) -> MeasureReport:
    """pi-tangle and its ingredients.  Raw pi_A, pi_B, pi_C are kept unclamped."""
    rho = require_density(rho, 3)
    ones, pairs, parts, pi = _pi_parts(rho)
    conv = (lambda x: float(x)) if rho.ndim == 2 else (lambda x: x)
    return MeasureReport(
        n_one_vs_rest=tuple(conv(x) for x in ones),
        n_pairs=tuple(conv(x) for x in pairs),
        pi_abc=tuple(conv(x) for x in parts),
        pi=conv(pi),
    )


@lru_cache(maxsize=None)
def _blocks(mask: int) -> tuple:
    """Connected components of the 4x4 nonzero pattern encoded bitwise in ``mask``."""
    adj = [[bool(mask >> (4 * i + j) & 1) or bool(mask >> (4 * j + i) & 1) for j in range(4)] for i in range(4)]
    seen, out = set(), []
    for start in range(4):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(4):
                if adj[i][j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        out.append(np.array(sorted(comp)))
    return tuple(out)


def _wootters(rho2: np.ndarray, rtol: float = 1e-13) -> float:
    # Block-deflate on exact zeros first: entries of 1x1 blocks are then exact
    # eigenvalues, which keeps sqrt(tiny population) terms accurate.
    mask = int(np.packbits((rho2 != 0).reshape(-1), bitorder="little").view("<u2")[0])
    cols = []
    for idx in _blocks(mask):
        w, v = np.linalg.eigh(rho2[np.ix_(idx, idx)])
        top = w.max()
        if top <= 0:
            continue
        for j in np.flatnonzero(w > rtol * top):
            col = np.zeros(4, dtype=complex)
            col[idx] = v[:, j] * np.sqrt(w[j])
            cols.append(col)
    if not cols:
        return 0.0
    vecs = np.array(cols).T
    # singular values of tau_ij = <v_i~|v_j> are the Wootters lambdas
    s = np.linalg.svd(vecs.T @ _YY @ vecs, compute_uv=False)
    return max(0.0, float(s[0] - s[1:].sum()))


def concurrence(rho2: np.ndarray) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.

    The l_i are the square roots of the eigenvalues of rho (Y x Y) rho* (Y x Y),
    obtained as singular values of the symmetric matrix built from a
    decomposition of ``rho2`` into subnormalised eigenvectors.
    """
    rho2 = require_density(rho2, 2)
    return _wootters(rho2)


def pair_concurrences(rho: np.ndarray) -> tuple:
    rho = require_density(rho, 3)
    return tuple(_wootters(partial_trace(rho, pr)) for pr in PAIRS)


def residual_pure(amps) -> float:
    """Residual entanglement tau_ABC = 4|d1 - 2 d2 + 4 d3| of a pure state.

    ``amps[i]`` is the amplitude of basis index ``i`` (``a_ijk`` with i the A bit).
    """
    a = np.asarray(amps, dtype=complex).reshape(-1)
    if a.size != 8:
        raise ValueError("residual_pure expects 8 amplitudes")
    if abs(np.vdot(a, a).real - 1.0) > 1e-12:
        raise InvalidStateError("amplitudes are not normalised")
    a000, a001, a010, a011, a100, a101, a110, a111 = a
    d1 = a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))


def ckw_margin(rho: np.ndarray) -> float:
    """4 det(rho_A) - C(rho_AB)^2 - C(rho_AC)^2 (nonnegative by monogamy)."""
    rho = require_density(rho, 3)
    rho_a = partial_trace(rho, ("A",))
    det = float(np.linalg.det(rho_a).real)
    c_ab = _wootters(partial_trace(rho, ("A", "B")))
    c_ac = _wootters(partial_trace(rho, ("A", "C")))
    return 4 * det - c_ab**2 - c_ac**2


def measure_report(rho: np.ndarray) -> MeasureReport:
    """Full report for a single 3-qubit state."""
    report = pi_tangle(rho)
    report.concurrences = pair_concurrences(rho)
    report.ckw_margin = ckw_margin(rho)
    return report


def measure_batch(rhos: np.ndarray, concurrences: bool = True) -> dict:
    """Column-wise measures for a stack ``(T, 8, 8)`` of states.

    The negativity work is vectorised over the stack; concurrences are
    computed state by state.
    """
    rhos = require_density(rhos, 3)
    ones, pairs, parts, pi = _pi_parts(rhos)
    cols = {
        "N_A": ones[0], "N_B": ones[1], "N_C": ones[2],
        "N_AB": pairs[0], "N_AC": pairs[1], "N_BC": pairs[2],
        "pi_A": parts[0], "pi_B": parts[1], "pi_C": parts[2],
        "pi": pi,
    }
    if concurrences:
        conc = np.array([[_wootters(partial_trace(r, pr)) for pr in PAIRS] for r in rhos])
        conc = conc.reshape(len(rhos), 3)
        det_a = np.linalg.det(partial_trace(rhos, ("A",))).real
        cols.update({
            "C_AB": conc[:, 0], "C_AC": conc[:, 1], "C_BC": conc[:, 2],
            "ckw_margin": 4 * det_a - conc[:, 0] ** 2 - conc[:, 1] ** 2,
        })
    return cols
