"""Dense linear algebra for 1-3 qubit density matrices.

Basis index ``i`` spells the bits ``(q_A q_B q_C)`` with qubit A as the most
significant bit, so ``|1> = |001>`` and ``|4> = |100>``.  Every function
accepts a single ``(d, d)`` array or a stack ``(..., d, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_SLACK = -1e-10

QUBITS = ("A", "B", "C")

Qubit = Union[str, int]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class InvalidStateError(ValueError):
    """Raised when an input is not a valid density matrix."""


def n_qubits(m: np.ndarray) -> int:
    dim = m.shape[-1]
    if m.shape[-2] != dim or dim < 2 or dim & (dim - 1):
        raise ValueError(f"expected a square 2^n matrix, got shape {m.shape}")
    return dim.bit_length() - 1


def qubit_slot(q: Qubit, n: int) -> int:
    """Map a label ('A', 'B', 'C') or slot index to the tensor slot."""
    if isinstance(q, str):
        if q not in QUBITS[:n]:
            raise ValueError(f"invalid qubit label {q!r} for a {n}-qubit register")
        return QUBITS.index(q)
    slot = int(q)
    if not 0 <= slot < n:
        raise ValueError(f"invalid qubit slot {q!r} for a {n}-qubit register")
    return slot


def kron(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of the given operators, left to right."""
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def ket(index: int, n: int = 3) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[index] = 1.0
    return v


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2).conj()


def partial_transpose(rho: np.ndarray, q: Qubit) -> np.ndarray:
    """Transpose qubit ``q`` only.

    Entry ``<i|rho^T_q|j>`` is ``<i'|rho|j'>`` where ``i'`` and ``j'`` are
    ``i`` and ``j`` with bit ``q`` exchanged.
    """
    rho = np.asarray(rho)
    n = n_qubits(rho)
    slot = qubit_slot(q, n)
    batch = rho.shape[:-2]
    nb = len(batch)
    t = rho.reshape(batch + (2,) * (2 * n))
    t = np.swapaxes(t, nb + slot, nb + n + slot)
    return t.reshape(rho.shape)


def partial_trace(rho: np.ndarray, keep: Iterable[Qubit]) -> np.ndarray:
    """Reduced state on the qubits in ``keep`` (kept in register order)."""
    rho = np.asarray(rho)
    n = n_qubits(rho)
    slots = sorted({qubit_slot(q, n) for q in keep})
    if not slots or len(slots) == n:
        raise ValueError("keep must be a nonempty proper subset of the register")
    batch = rho.shape[:-2]
    t = rho.reshape(batch + (2,) * (2 * n))
    row = list(range(n))
    col = [n + k if k in slots else k for k in range(n)]
    lead = list(range(2 * n, 2 * n + len(batch)))
    out = lead + slots + [n + k for k in slots]
    reduced = np.einsum(t, lead + row + col, out)
    d = 2 ** len(slots)
    return reduced.reshape(batch + (d, d))


def hermiticity_error(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    return np.abs(m - dagger(m)).max(axis=(-2, -1))


def hermitian_eigenvalues(m: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (or stack)."""
    m = np.asarray(m)
    err = np.max(hermiticity_error(m))
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^+| = {err:.3g})")
    return np.linalg.eigvalsh(m)


def trace_norm(m: np.ndarray) -> np.ndarray:
    """Tr sqrt(M M^+) for Hermitian ``M``: the sum of absolute eigenvalues."""
    return np.abs(hermitian_eigenvalues(m)).sum(axis=-1)


@dataclass(frozen=True)
class DensityDiagnostics:
    hermiticity: float
    trace_deviation: float
    min_eigenvalue: float

    @property
    def ok(self) -> bool:
        return (
            self.hermiticity <= HERMITIAN_TOL
            and self.trace_deviation <= TRACE_TOL
            and self.min_eigenvalue >= PSD_SLACK
        )


def validate_density(rho: np.ndarray) -> DensityDiagnostics:
    """Report how far ``rho`` is from a density matrix.  Never raises on content."""
    rho = np.asarray(rho, dtype=complex)
    n_qubits(rho)
    herm = float(np.max(hermiticity_error(rho)))
    tr = float(np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1.0)))
    sym = 0.5 * (rho + dagger(rho))
    lo = float(np.min(np.linalg.eigvalsh(sym)))
    return DensityDiagnostics(herm, tr, lo)


def require_density(rho: np.ndarray, qubits: Sequence[int] | int | None = None) -> np.ndarray:
    """Return ``rho`` as a complex array, raising InvalidStateError if it is not a state."""
    rho = np.asarray(rho, dtype=complex)
    try:
        n = n_qubits(rho)
    except ValueError as exc:
        raise InvalidStateError(str(exc)) from None
    if qubits is not None:
        allowed = (qubits,) if isinstance(qubits, int) else tuple(qubits)
        if n not in allowed:
            raise InvalidStateError(f"expected a {allowed}-qubit state, got {n} qubits")
    diag = validate_density(rho)
    if not diag.ok:
        raise InvalidStateError(f"not a density matrix: {diag}")
    return rho
