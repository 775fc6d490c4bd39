"""Local amplitude damping driven by the decoherence amplitude P_t.

Two independent routes for three qubits:

* :func:`evolve_three_direct` applies the closed element-update table
  (production path, vectorised over arrays of ``P``);
* :func:`evolve_three_kraus` conjugates with all eight products of
  single-qubit Kraus operators (oracle path).
"""

from __future__ import annotations

from itertools import product
from typing import NamedTuple

import numpy as np

from .linalg import kron, n_qubits, require_density


class KrausPair(NamedTuple):
    k0: np.ndarray
    k1: np.ndarray


def evolve_single(rho0: np.ndarray, P) -> np.ndarray:
    """Reduced single-qubit state after damping with amplitude ``P`` (may be complex)."""
    rho0 = require_density(rho0, 1)
    P = complex(P)
    p2 = abs(P) ** 2
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = rho0[0, 0] + rho0[1, 1] * (1 - p2)
    out[0, 1] = rho0[0, 1] * P
    out[1, 0] = rho0[1, 0] * P.conjugate()
    out[1, 1] = rho0[1, 1] * p2
    return out


def damping_kraus(P) -> KrausPair:
    """Kraus pair reproducing :func:`evolve_single`: K0 = diag(1, P*), K1 = sqrt(1-|P|^2)|0><1|."""
    P = complex(P)
    if abs(P) > 1 + 1e-15:
        raise ValueError(f"|P| must not exceed 1, got {abs(P)}")
    k0 = np.diag([1.0, P.conjugate()]).astype(complex)
    k1 = np.zeros((2, 2), dtype=complex)
    k1[0, 1] = np.sqrt(max(0.0, 1.0 - abs(P) ** 2))
    return KrausPair(k0, k1)


def evolve_kraus(rho0: np.ndarray, P) -> np.ndarray:
    """Apply the same damping channel independently to every qubit of ``rho0``."""
    rho0 = require_density(rho0)
    n = n_qubits(rho0)
    pair = damping_kraus(P)
    out = np.zeros_like(rho0)
    for ks in product(pair, repeat=n):
        k = kron(*ks)
        out += k @ rho0 @ k.conj().T
    return out


def evolve_three_kraus(rho0: np.ndarray, P) -> np.ndarray:
    """Three-qubit evolution as a sum over the eight Kraus products K_i (x) K_j (x) K_k."""
    rho0 = require_density(rho0, 3)
    return evolve_kraus(rho0, P)


# (i, j) -> (power of P, ((k, l, power of 1-P^2), ...)) for the upper triangle.
# rho_00 collects every decayed population (equal to 1 - trace of the rest,
# but summed directly to avoid cancellation); the rest by Hermitian completion.
_POPULATIONS = {
    1: (2, ((1, 1, 0), (3, 3, 1), (5, 5, 1), (7, 7, 2))),
    2: (2, ((2, 2, 0), (3, 3, 1), (6, 6, 1), (7, 7, 2))),
    3: (4, ((3, 3, 0), (7, 7, 1))),
    4: (2, ((4, 4, 0), (5, 5, 1), (6, 6, 1), (7, 7, 2))),
    5: (4, ((5, 5, 0), (7, 7, 1))),
    6: (4, ((6, 6, 0), (7, 7, 1))),
    7: (6, ((7, 7, 0),)),
}

_COHERENCES = {
    (0, 1): (1, ((0, 1, 0), (2, 3, 1), (4, 5, 1), (6, 7, 2))),
    (0, 2): (1, ((0, 2, 0), (1, 3, 1), (4, 6, 1), (5, 7, 2))),
    (0, 4): (1, ((0, 4, 0), (1, 5, 1), (2, 6, 1), (3, 7, 2))),
    (0, 3): (2, ((0, 3, 0), (4, 7, 1))),
    (0, 5): (2, ((0, 5, 0), (2, 7, 1))),
    (0, 6): (2, ((0, 6, 0), (1, 7, 1))),
    (1, 2): (2, ((1, 2, 0), (5, 6, 1))),
    (1, 3): (3, ((1, 3, 0), (5, 7, 1))),
    (1, 4): (2, ((1, 4, 0), (3, 6, 1))),
    (1, 5): (3, ((1, 5, 0), (3, 7, 1))),
    (2, 3): (3, ((2, 3, 0), (6, 7, 1))),
    (2, 4): (2, ((2, 4, 0), (3, 5, 1))),
    (2, 6): (3, ((2, 6, 0), (3, 7, 1))),
    (4, 5): (3, ((4, 5, 0), (6, 7, 1))),
    (4, 6): (3, ((4, 6, 0), (5, 7, 1))),
    (0, 7): (3, ((0, 7, 0),)),
    (1, 6): (3, ((1, 6, 0),)),
    (1, 7): (4, ((1, 7, 0),)),
    (2, 5): (3, ((2, 5, 0),)),
    (2, 7): (4, ((2, 7, 0),)),
    (3, 4): (3, ((3, 4, 0),)),
    (3, 5): (4, ((3, 5, 0),)),
    (3, 6): (4, ((3, 6, 0),)),
    (3, 7): (5, ((3, 7, 0),)),
    (4, 7): (4, ((4, 7, 0),)),
    (5, 6): (4, ((5, 6, 0),)),
    (5, 7): (5, ((5, 7, 0),)),
    (6, 7): (5, ((6, 7, 0),)),
}


def _real_amplitude(P) -> np.ndarray:
    P = np.asarray(P)
    if np.iscomplexobj(P):
        if np.any(P.imag != 0):
            raise ValueError("the element-update table assumes a real amplitude P")
        P = P.real
    P = P.astype(float)
    if np.any(np.abs(P) > 1 + 1e-15):
        raise ValueError("|P| must not exceed 1")
    return P


def evolve_three_direct(rho0: np.ndarray, P) -> np.ndarray:
    """Evolve a 3-qubit state through the element-update table.

    ``P`` may be a scalar or an array; the result has shape ``P.shape + (8, 8)``.
    """
    rho0 = require_density(rho0, 3)
    P = _real_amplitude(P)
    q = 1.0 - P * P
    out = np.zeros(P.shape + (8, 8), dtype=complex)

    def term(power, sources):
        acc = 0
        for k, l, m in sources:
            acc = acc + rho0[k, l] * q**m
        return P**power * acc

    for i, (power, sources) in _POPULATIONS.items():
        out[..., i, i] = term(power, sources)
    for (i, j), (power, sources) in _COHERENCES.items():
        val = term(power, sources)
        out[..., i, j] = val
        out[..., j, i] = np.conj(val)
    weight = np.array([bin(k).count("1") for k in range(8)])
    out[..., 0, 0] = sum(rho0[k, k].real * q**weight[k] for k in range(8))
    return out
