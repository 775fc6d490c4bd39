import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_density, seeds
from tripartite.channel import (
    damping_kraus,
    evolve_kraus,
    evolve_single,
    evolve_three_direct,
    evolve_three_kraus,
)
from tripartite.linalg import InvalidStateError, kron, partial_trace, validate_density


@settings(max_examples=40, deadline=None)
@given(seeds, st.floats(min_value=-1.0, max_value=1.0))
def test_direct_table_matches_kraus(seed, P):
    rho = random_density(np.random.default_rng(seed))
    assert np.max(np.abs(evolve_three_direct(rho, P) - evolve_three_kraus(rho, P))) <= 1e-14


def test_single_qubit_kraus_complete_and_consistent(rng):
    for P in (0.3, -0.8, 0.4 + 0.5j, 1.0, 0.0):
        k0, k1 = damping_kraus(P)
        assert np.allclose(k0.conj().T @ k0 + k1.conj().T @ k1, np.eye(2), atol=1e-15)
        rho = random_density(rng, 1)
        assert np.allclose(evolve_kraus(rho, P), evolve_single(rho, P), atol=1e-15)


def test_kraus_rejects_amplitude_above_one():
    with pytest.raises(ValueError):
        damping_kraus(1.01)


def test_identity_and_full_decay(rng):
    rho = random_density(rng)
    assert np.allclose(evolve_three_direct(rho, 1.0), rho, atol=1e-15)
    ground = np.zeros((8, 8))
    ground[0, 0] = 1
    assert np.allclose(evolve_three_direct(rho, 0.0), ground, atol=1e-15)


def test_product_state_evolves_qubit_by_qubit(rng):
    a, b, c = (random_density(rng, 1) for _ in range(3))
    P = 0.63
    out = evolve_three_direct(kron(a, b, c), P)
    expected = kron(evolve_single(a, P), evolve_single(b, P), evolve_single(c, P))
    assert np.allclose(out, expected, atol=1e-15)


def test_reduced_states_follow_single_qubit_map(rng):
    rho = random_density(rng)
    P = -0.41
    out = evolve_three_direct(rho, P)
    for q in "ABC":
        assert np.allclose(partial_trace(out, q), evolve_single(partial_trace(rho, q), P), atol=1e-15)


def test_output_is_a_state_with_exact_trace(rng):
    rho = random_density(rng, rank=2)
    P = np.linspace(-1, 1, 101)
    out = evolve_three_direct(rho, P)
    assert out.shape == (101, 8, 8)
    diag = validate_density(out)
    assert diag.ok and diag.trace_deviation <= 1e-14


def test_top_corner_population_scales_as_p6(rng):
    rho = random_density(rng)
    P = 0.7
    assert evolve_three_direct(rho, P)[7, 7] == pytest.approx(P**6 * rho[7, 7], abs=1e-16)


def test_ground_population_without_cancellation():
    # GHZ-like support near t = 0: rho_00 must stay exactly a^2, not 1 - (1 - a^2)
    rho = np.zeros((8, 8))
    rho[0, 0], rho[7, 7] = 1e-20, 1 - 1e-20
    assert evolve_three_direct(rho, 1.0)[0, 0] == 1e-20


def test_direct_rejects_complex_amplitude(rng):
    with pytest.raises((ValueError, TypeError)):
        evolve_three_direct(random_density(rng), 0.5 + 0.1j)


def test_direct_rejects_non_state():
    with pytest.raises(InvalidStateError):
        evolve_three_direct(np.eye(8), 0.5)


def test_generic_n_qubit_kraus(rng):
    rho = random_density(rng, 2)
    P = 0.5
    out = evolve_kraus(rho, P)
    assert np.trace(out).real == pytest.approx(1.0)
    assert np.allclose(partial_trace(out, (0,)), evolve_single(partial_trace(rho, (0,)), P))
