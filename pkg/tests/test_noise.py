import math

import numpy as np
import pytest

from bispinor.dirac import DiracParams
from bispinor.errors import InvariantViolation
from bispinor.linalg import evolution_operator
from bispinor.noise import (KrausSet, NoiseParams, apply_channel, build_kraus_set,
                            coefficient_matrix, evolve_noiseless, evolve_noisy,
                            validate_density_matrix)

RNG = np.random.default_rng(3)

PARAMS = DiracParams(m=1.0, p=1.0, kappa=1.0, mu=1.0, E_field=1.0)


def random_density():
    G = RNG.normal(size=(4, 4)) + 1j * RNG.normal(size=(4, 4))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def bell_state():
    vec = np.zeros(4, dtype=complex)
    vec[0] = vec[3] = 1.0 / math.sqrt(2.0)
    return np.outer(vec, vec.conj())


def test_noise_params_validation():
    with pytest.raises(ValueError):
        NoiseParams(gamma_rate=-0.1)
    with pytest.raises(ValueError):
        NoiseParams(gamma_rate=float("inf"))


def test_kraus_factors():
    ks = build_kraus_set(NoiseParams(0.5), 2.0)
    assert ks.gamma_factor == pytest.approx(math.exp(-0.5))
    assert ks.omega_factor == pytest.approx(math.sqrt(1.0 - math.exp(-1.0)))
    assert len(ks.operators) == 4
    for K in ks.operators:
        assert np.max(np.abs(K.imag)) == 0.0  # all real diagonal


def test_kraus_completeness():
    for gamma in (0.0, 0.3, 2.0):
        for t in (0.0, 0.5, 7.0, 100.0):
            ks = build_kraus_set(NoiseParams(gamma), t)
            total = sum(K.conj().T @ K for K in ks.operators)
            assert np.max(np.abs(total - np.eye(4))) < 1e-12


def test_kraus_identity_limits():
    # no rate, or no elapsed time: the channel is the identity
    for ks in (build_kraus_set(NoiseParams(0.0), 5.0),
               build_kraus_set(NoiseParams(0.7), 0.0)):
        assert ks.gamma_factor == 1.0
        assert ks.omega_factor == 0.0
        rho = random_density()
        assert np.max(np.abs(apply_channel(rho, ks) - rho)) < 1e-15


def test_kraus_rejects_negative_time():
    with pytest.raises(ValueError):
        build_kraus_set(NoiseParams(0.5), -0.01)


def test_channel_matches_elementwise_form():
    """Operator-sum route equals the coefficient-matrix route."""
    for _ in range(10):
        rho = random_density()
        for gamma, t in ((0.5, 1.0), (2.0, 0.3), (0.1, 10.0)):
            ks = build_kraus_set(NoiseParams(gamma), t)
            out = apply_channel(rho, ks)
            np.testing.assert_allclose(out, coefficient_matrix(ks) * rho,
                                       rtol=0, atol=1e-14)


def test_coefficient_matrix_shape():
    ks = build_kraus_set(NoiseParams(1.0), 1.0)
    g = ks.gamma_factor
    c = coefficient_matrix(ks)
    assert np.array_equal(np.diag(c), np.ones(4))
    assert c[0, 3] == pytest.approx(g * g)
    assert c[0, 1] == c[1, 0] == pytest.approx(g)
    assert np.array_equal(c, c.T)


def test_channel_is_a_semigroup_in_time():
    # dephasing factors multiply: t1 then t2 equals t1 + t2
    rho = random_density()
    noise = NoiseParams(0.8)
    step = apply_channel(apply_channel(rho, build_kraus_set(noise, 0.4)),
                         build_kraus_set(noise, 1.1))
    once = apply_channel(rho, build_kraus_set(noise, 1.5))
    np.testing.assert_allclose(step, once, rtol=0, atol=1e-14)


def test_channel_fixes_diagonal_states():
    diag = np.diag(np.array([0.4, 0.3, 0.2, 0.1], dtype=complex))
    ks = build_kraus_set(NoiseParams(1.5), 2.0)
    assert np.max(np.abs(apply_channel(diag, ks) - diag)) < 1e-15


def test_channel_never_raises_purity():
    for _ in range(10):
        rho = random_density()
        ks = build_kraus_set(NoiseParams(0.6), float(RNG.uniform(0.1, 5.0)))
        out = apply_channel(rho, ks)
        pur_in = float(np.trace(rho @ rho).real)
        pur_out = float(np.trace(out @ out).real)
        assert pur_out <= pur_in + 1e-12
        assert abs(np.trace(out).real - 1.0) < 1e-12


def test_channel_rejects_broken_kraus_set():
    ks = build_kraus_set(NoiseParams(0.5), 1.0)
    broken = KrausSet(operators=ks.operators[:3], gamma_factor=ks.gamma_factor,
                      omega_factor=ks.omega_factor)
    with pytest.raises(ValueError):
        apply_channel(np.eye(4) / 4.0, broken)


def test_validate_density_matrix_passes_good_states():
    for rho in (np.eye(4) / 4.0, bell_state(), random_density()):
        out = validate_density_matrix(rho)
        assert np.array_equal(out, np.asarray(rho, dtype=complex))


def test_validate_density_matrix_diagnostics():
    with pytest.raises(InvariantViolation, match="shape"):
        validate_density_matrix(np.eye(3) / 3.0)
    bad = np.eye(4, dtype=complex) / 4.0
    bad[0, 1] = 0.2  # not Hermitian
    with pytest.raises(InvariantViolation, match="Hermitian"):
        validate_density_matrix(bad)
    with pytest.raises(InvariantViolation, match="trace"):
        validate_density_matrix(np.eye(4, dtype=complex) / 2.0)
    with pytest.raises(InvariantViolation, match="eigenvalue"):
        validate_density_matrix(np.diag([0.7, 0.5, -0.1, -0.1]).astype(complex))


def test_noiseless_evolution_matches_unitary_conjugation():
    from bispinor.dirac import build_dirac_hamiltonian

    H = build_dirac_hamiltonian(PARAMS)
    for t in (0.0, 0.3, 2.0, 17.0):
        U = evolution_operator(H, t)
        for rho in (bell_state(), random_density()):
            want = U @ rho @ U.conj().T
            got = evolve_noiseless(rho, PARAMS, t)
            np.testing.assert_allclose(got, want, rtol=0, atol=1e-10)


def test_noiseless_evolution_degenerate_fallback():
    # E = 0 has no analytic projectors; the numeric route must take over
    free = DiracParams(m=1.0, p=1.0, kappa=1.0, mu=1.0, E_field=0.0)
    rho = bell_state()
    out = evolve_noiseless(rho, free, 1.3)
    assert abs(np.trace(out).real - 1.0) < 1e-12
    assert float(np.trace(out @ out).real) == pytest.approx(1.0, abs=1e-12)


def test_noiseless_preserves_purity():
    rho = bell_state()
    out = evolve_noiseless(rho, PARAMS, 5.0)
    assert float(np.trace(out @ out).real) == pytest.approx(1.0, abs=1e-10)


def test_noisy_reduces_to_noiseless_at_zero_rate():
    quiet = NoiseParams(0.0)
    for t in (0.5, 3.0):
        rho = random_density()
        np.testing.assert_allclose(evolve_noisy(rho, PARAMS, quiet, t),
                                   evolve_noiseless(rho, PARAMS, t),
                                   rtol=0, atol=1e-12)


def test_noisy_at_time_zero_is_identity():
    rho = random_density()
    np.testing.assert_allclose(evolve_noisy(rho, PARAMS, NoiseParams(0.9), 0.0),
                               rho, rtol=0, atol=1e-14)


def test_noisy_composition_order():
    """Channel first, rotation second; the reversed order differs."""
    from bispinor.dirac import build_dirac_hamiltonian

    noise = NoiseParams(0.5)
    t = 1.7
    rho0 = bell_state()
    H = build_dirac_hamiltonian(PARAMS)
    U = evolution_operator(H, t)
    ks = build_kraus_set(noise, t)
    want = U @ apply_channel(rho0, ks) @ U.conj().T
    got = evolve_noisy(rho0, PARAMS, noise, t)
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)
    reversed_order = apply_channel(U @ rho0 @ U.conj().T, ks)
    assert np.max(np.abs(got - reversed_order)) > 1e-3


def test_noisy_rejects_negative_time():
    with pytest.raises(ValueError):
        evolve_noisy(bell_state(), PARAMS, NoiseParams(0.5), -1.0)


def test_noisy_long_time_coherence_floor():
    # gamma factor shrinks but never reaches zero at finite time
    rho = bell_state()
    out = evolve_noisy(rho, PARAMS, NoiseParams(0.5), 20.0)
    assert abs(np.trace(out).real - 1.0) < 1e-12
    pur = float(np.trace(out @ out).real)
    assert 0.25 - 1e-12 <= pur <= 1.0
