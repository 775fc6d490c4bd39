import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tripartite.decoherence import (
    BOUNDARY,
    MARKOVIAN,
    NON_MARKOVIAN,
    RegimeError,
    ReservoirParams,
    amplitude,
    amplitude_markovian,
    amplitude_nonmarkovian,
    amplitude_ode_oracle,
    amplitude_zeros,
    memory_kernel,
)


def _mp_amplitude(t, gamma0, lam):
    # independent high-precision evaluation via the characteristic roots
    mpmath.mp.dps = 40
    t, g, lam = mpmath.mpf(t), mpmath.mpf(gamma0), mpmath.mpf(lam)
    disc = mpmath.sqrt(mpmath.mpc(lam**2 - 2 * g * lam))
    r1, r2 = (-lam + disc) / 2, (-lam - disc) / 2
    # P = c1 e^{r1 t} + c2 e^{r2 t}, P(0) = 1, P'(0) = 0
    c1 = -r2 / (r1 - r2)
    c2 = r1 / (r1 - r2)
    return float(mpmath.re(c1 * mpmath.exp(r1 * t) + c2 * mpmath.exp(r2 * t)))


def test_regime_classification():
    assert ReservoirParams.from_ratio(3).regime == MARKOVIAN
    assert ReservoirParams.from_ratio(0.01).regime == NON_MARKOVIAN
    assert ReservoirParams.from_ratio(2).regime == BOUNDARY
    assert ReservoirParams(gamma0=2.0, lam=4.0).regime == BOUNDARY


@pytest.mark.parametrize("gamma0, lam", [(0, 1), (1, 0), (-1, 1), (1, -2)])
def test_params_reject_nonpositive(gamma0, lam):
    with pytest.raises(ValueError):
        ReservoirParams(gamma0, lam)


@pytest.mark.parametrize("ratio", [3.0, 2.5, 10.0, 1.5, 0.5, 0.01, 0.001])
def test_amplitude_matches_high_precision(ratio):
    p = ReservoirParams.from_ratio(ratio)
    for t in [0.0, 0.3, 1.0, 4.0, 23.0, 80.0]:
        assert amplitude(t, p) == pytest.approx(_mp_amplitude(t, 1.0, ratio), abs=1e-13)


def test_amplitude_with_nonunit_gamma0():
    p = ReservoirParams(gamma0=2.5, lam=0.5)
    assert amplitude(1.7, p) == pytest.approx(_mp_amplitude(1.7, 2.5, 0.5), abs=1e-13)


def test_boundary_is_continuous():
    t = np.linspace(0, 10, 41)
    mid = amplitude(t, ReservoirParams.from_ratio(2.0))
    for ratio in (2.0 + 1e-7, 2.0 - 1e-7):
        assert np.max(np.abs(amplitude(t, ReservoirParams.from_ratio(ratio)) - mid)) < 1e-6


@pytest.mark.parametrize("ratio", [3.0, 2.0, 0.5, 0.01])
def test_ode_oracle_agrees(ratio):
    p = ReservoirParams.from_ratio(ratio)
    steps = 6000
    oracle = amplitude_ode_oracle(30.0, steps, p)
    closed = amplitude(np.linspace(0, 30, steps + 1), p)
    assert np.max(np.abs(oracle - closed)) <= 1e-6


def test_markovian_amplitude_is_monotone_and_stable():
    p = ReservoirParams.from_ratio(3.0)
    t = np.linspace(0, 2000, 4001)
    vals = amplitude_markovian(t, p)
    assert np.all(np.isfinite(vals))
    assert np.all(np.diff(vals) <= 0)
    assert vals[0] == 1.0 and 0 <= vals[-1] < 1e-100


def test_wrong_regime_raises():
    with pytest.raises(RegimeError):
        amplitude_markovian(1.0, ReservoirParams.from_ratio(0.5))
    with pytest.raises(RegimeError):
        amplitude_nonmarkovian(1.0, ReservoirParams.from_ratio(3.0))
    with pytest.raises(RegimeError):
        amplitude_zeros(ReservoirParams.from_ratio(3.0), 2)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        amplitude(-0.1, ReservoirParams.from_ratio(3))


def test_scalar_and_array_returns():
    p = ReservoirParams.from_ratio(0.5)
    assert isinstance(amplitude(1.0, p), float)
    assert amplitude(np.array([0.0, 1.0]), p).shape == (2,)


def test_zeros_are_roots():
    p = ReservoirParams.from_ratio(0.01)
    zeros = amplitude_zeros(p, 4)
    assert zeros[0] == pytest.approx(23.2735, abs=1e-4)
    assert np.all(np.diff(zeros) > 0)
    for t in zeros:
        # compare against the local slope so the check is scale free
        slope = abs(amplitude(t + 1e-6, p) - amplitude(t - 1e-6, p)) / 2e-6
        assert abs(amplitude(t, p)) <= 1e-10 * max(slope, 1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1.99))
def test_first_zero_sign_change(ratio):
    p = ReservoirParams.from_ratio(ratio)
    t1 = amplitude_zeros(p, 1)[0]
    eps = 1e-4 * t1
    assert amplitude(t1 - eps, p) > 0 > amplitude(t1 + eps, p)


def test_memory_kernel():
    p = ReservoirParams(gamma0=1.0, lam=3.0)
    assert memory_kernel(0.0, p) == pytest.approx(1.5)
    assert memory_kernel(-1.0, p) == pytest.approx(1.5 * math.exp(-3))


def test_ode_oracle_validation():
    p = ReservoirParams.from_ratio(3)
    with pytest.raises(ValueError):
        amplitude_ode_oracle(1.0, 0, p)
    assert amplitude_ode_oracle(1.0, 10, p).shape == (11,)
