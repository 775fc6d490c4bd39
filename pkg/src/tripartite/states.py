"""Initial three-qubit states: GHZ families I-IV, W families, and the GHZ/W mixture."""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .linalg import SIGMA_X, SIGMA_Z, InvalidStateError, kron, projector, require_density

# basis indices carrying the two GHZ amplitudes, per family
GHZ_SUPPORT = {"I": (0, 7), "II": (1, 6), "III": (3, 4), "IV": (2, 5)}
# basis indices carrying the three W amplitudes (a, b, c)
W_SUPPORT = {"W1": (1, 2, 4), "W2": (6, 5, 3)}

NORM_TOL = 1e-12
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class GhzFamilySpec:
    """a|i> + b e^{i delta}|j> with (i, j) fixed by the family."""

    family: str
    a: float
    b: float
    delta: float = 0.0

    def __post_init__(self):
        if self.family not in GHZ_SUPPORT:
            raise ValueError(f"unknown GHZ family {self.family!r}")
        if self.a < 0 or self.b < 0:
            raise ValueError("amplitudes must be nonnegative; put signs into delta")
        if abs(self.a**2 + self.b**2 - 1) > NORM_TOL:
            raise InvalidStateError(f"a^2 + b^2 = {self.a**2 + self.b**2} != 1")

    @classmethod
    def from_a2(cls, family: str, a2: float, delta: float = 0.0) -> "GhzFamilySpec":
        if not 0 <= a2 <= 1:
            raise ValueError(f"a^2 must lie in [0, 1], got {a2}")
        return cls(family, math.sqrt(a2), math.sqrt(1 - a2), delta)

    @classmethod
    def from_amplitudes(cls, family: str, alpha: complex, beta: complex) -> "GhzFamilySpec":
        """Normalise arbitrary complex amplitudes, dropping the global phase."""
        norm = math.hypot(abs(alpha), abs(beta))
        if norm == 0:
            raise InvalidStateError("zero vector")
        rel = cmath.phase(beta) - cmath.phase(alpha) if alpha and beta else 0.0
        return cls(family, abs(alpha) / norm, abs(beta) / norm, rel)

    @property
    def a2(self) -> float:
        return self.a**2


@dataclass(frozen=True)
class WFamilySpec:
    """a|i> + b e^{i delta1}|j> + c e^{i delta2}|k> with (i, j, k) fixed by the family."""

    family: str
    a: float
    b: float
    c: float
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if self.family not in W_SUPPORT:
            raise ValueError(f"unknown W family {self.family!r}")
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("amplitudes must be nonnegative; put signs into the phases")
        total = self.a**2 + self.b**2 + self.c**2
        if abs(total - 1) > NORM_TOL:
            raise InvalidStateError(f"a^2 + b^2 + c^2 = {total} != 1")

    @classmethod
    def from_squares(cls, family: str, a2: float, b2: float, c2: float | None = None,
                     delta1: float = 0.0, delta2: float = 0.0) -> "WFamilySpec":
        if c2 is None:
            c2 = 1.0 - a2 - b2
        # rounding residue of 1 - a2 - b2 (e.g. 5e-17) would survive the sqrt as ~1e-8
        sq = [0.0 if abs(x) <= 8 * _EPS else max(x, 0.0) if x > -NORM_TOL else x for x in (a2, b2, c2)]
        if min(sq) < 0:
            raise ValueError(f"squared amplitudes must be nonnegative, got {(a2, b2, c2)}")
        return cls(family, *(math.sqrt(x) for x in sq), delta1, delta2)

    @classmethod
    def symmetric(cls, family: str, delta1: float = 0.0, delta2: float = 0.0) -> "WFamilySpec":
        s = 1 / math.sqrt(3)
        return cls(family, s, s, s, delta1, delta2)


@dataclass(frozen=True)
class MixtureSpec:
    """p |GHZ><GHZ| + (1 - p) |W><W|."""

    p: float

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"mixing weight must lie in [0, 1], got {self.p}")


def ghz_vector(spec: GhzFamilySpec) -> np.ndarray:
    i, j = GHZ_SUPPORT[spec.family]
    v = np.zeros(8, dtype=complex)
    v[i] = spec.a
    v[j] = spec.b * cmath.exp(1j * spec.delta)
    return v


def w_vector(spec: WFamilySpec) -> np.ndarray:
    i, j, k = W_SUPPORT[spec.family]
    v = np.zeros(8, dtype=complex)
    v[i] = spec.a
    v[j] = spec.b * cmath.exp(1j * spec.delta1)
    v[k] = spec.c * cmath.exp(1j * spec.delta2)
    return v


def make_ghz(spec: GhzFamilySpec) -> np.ndarray:
    return projector(ghz_vector(spec))


def make_w(spec: WFamilySpec) -> np.ndarray:
    return projector(w_vector(spec))


def standard_ghz() -> np.ndarray:
    return make_ghz(GhzFamilySpec("I", 1 / math.sqrt(2), 1 / math.sqrt(2)))


def standard_w() -> np.ndarray:
    return make_w(WFamilySpec.symmetric("W1"))


def make_mixture(spec: MixtureSpec) -> np.ndarray:
    return spec.p * standard_ghz() + (1 - spec.p) * standard_w()


P0 = 4 * 2 ** (1 / 3) / (3 + 4 * 2 ** (1 / 3))
P1 = 0.5 + 3 * math.sqrt(465) / 310


def tau_mixture(p: float) -> float:
    """Residual entanglement of the GHZ/W mixture as a function of the GHZ weight ``p``."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if p <= P0:
        return 0.0
    if p <= P1:
        return p**2 - (8 * math.sqrt(6) / 9) * math.sqrt(p * (1 - p) ** 3)
    return 1 - (1 - p) * (1.5 + math.sqrt(465) / 18)


def _permute_qubits(rho: np.ndarray, perm) -> np.ndarray:
    t = rho.reshape((2,) * 6)
    axes = list(perm) + [3 + k for k in perm]
    return t.transpose(axes).reshape(8, 8)


# (phi1, phi2) with phi3 = -phi1 - phi2
_Z_GRID = tuple((math.pi * k / 4, math.pi * (2 * k + 1) / 8) for k in range(8))


def ghz_symmetry_deviation(rho: np.ndarray) -> float:
    """Largest entrywise change of ``rho`` under the GHZ symmetry group generators.

    Checks every qubit permutation, the simultaneous flip X(x)X(x)X, and
    z-rotations exp(i phi_k Z) with phi1 + phi2 + phi3 = 0 on a fixed grid.
    """
    rho = require_density(rho, 3)
    worst = 0.0
    for perm in permutations(range(3)):
        worst = max(worst, np.abs(_permute_qubits(rho, perm) - rho).max())
    flip = kron(SIGMA_X, SIGMA_X, SIGMA_X)
    worst = max(worst, np.abs(flip @ rho @ flip - rho).max())
    z = np.diag(SIGMA_Z).real
    for phi1, phi2 in _Z_GRID:
        phases = np.exp(1j * np.add.outer(np.add.outer(phi1 * z, phi2 * z), -(phi1 + phi2) * z)).reshape(8)
        rotated = phases[:, None] * rho * phases.conj()[None, :]
        worst = max(worst, np.abs(rotated - rho).max())
    return float(worst)
