import math

import numpy as np
import pytest

from bispinor.correlations import (fano_decompose, geometric_discord, negativity,
                                   purity, sample_correlations)
from bispinor.linalg import partial_transpose, trace_norm_hermitian

RNG = np.random.default_rng(17)


def random_density():
    G = RNG.normal(size=(4, 4)) + 1j * RNG.normal(size=(4, 4))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_local_unitaries():
    out = []
    for _ in range(2):
        G = RNG.normal(size=(2, 2)) + 1j * RNG.normal(size=(2, 2))
        Q, R = np.linalg.qr(G)
        out.append(Q * (np.diag(R) / np.abs(np.diag(R))))
    return out


def schmidt_state(chi):
    vec = np.zeros(4, dtype=complex)
    vec[0] = math.cos(chi)
    vec[3] = math.sin(chi)
    return np.outer(vec, vec.conj())


def isotropic(q):
    return q * schmidt_state(math.pi / 4) + (1.0 - q) * np.eye(4) / 4.0


def test_fano_decompose_bell():
    fd = fano_decompose(schmidt_state(math.pi / 4))
    np.testing.assert_allclose(fd.a1, np.zeros(3), rtol=0, atol=1e-14)
    np.testing.assert_allclose(fd.a2, np.zeros(3), rtol=0, atol=1e-14)
    np.testing.assert_allclose(fd.T, np.diag([1.0, -1.0, 1.0]), rtol=0, atol=1e-14)


def test_fano_decompose_product_state():
    a = np.array([[0.7, 0.1 + 0.2j], [0.1 - 0.2j, 0.3]])
    b = np.array([[0.6, -0.25j], [0.25j, 0.4]])
    fd = fano_decompose(np.kron(a, b))
    # T factorizes as the outer product of the two local vectors
    np.testing.assert_allclose(fd.T, np.outer(fd.a1, fd.a2), rtol=0, atol=1e-12)


def test_fano_reconstruction():
    """rho = 1/4 (I + a1.s (x) I + I (x) a2.s + T_ij s_i (x) s_j)."""
    from bispinor.linalg import PAULI, IDENTITY_2

    rho = random_density()
    fd = fano_decompose(rho)
    axes = ("x", "y", "z")
    rebuilt = np.eye(4, dtype=complex)
    for i, ax in enumerate(axes):
        rebuilt = rebuilt + fd.a1[i] * np.kron(PAULI[ax], IDENTITY_2)
        rebuilt = rebuilt + fd.a2[i] * np.kron(IDENTITY_2, PAULI[ax])
        for j, bx in enumerate(axes):
            rebuilt = rebuilt + fd.T[i, j] * np.kron(PAULI[ax], PAULI[bx])
    np.testing.assert_allclose(rho, rebuilt / 4.0, rtol=0, atol=1e-12)


def test_fano_rejects_non_hermitian():
    bad = np.eye(4, dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(ValueError):
        fano_decompose(bad)


def test_negativity_anchors():
    assert negativity(schmidt_state(math.pi / 4)) == pytest.approx(1.0, abs=1e-12)
    assert negativity(np.eye(4, dtype=complex) / 4.0) == 0.0
    v = np.kron([1.0, 0.0], [0.0, 1.0]).astype(complex)
    assert negativity(np.outer(v, v)) == 0.0


def test_negativity_isotropic_family():
    # max(0, (3q - 1)/2), entangled only above q = 1/3
    for q in (0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0):
        want = max(0.0, (3.0 * q - 1.0) / 2.0)
        assert negativity(isotropic(q)) == pytest.approx(want, abs=1e-12)


def test_negativity_schmidt_closed_form():
    for chi in (0.0, 0.1, math.pi / 8, 0.6, math.pi / 4):
        assert negativity(schmidt_state(chi)) == pytest.approx(
            abs(math.sin(2.0 * chi)), abs=1e-12)


def test_negativity_side_symmetry():
    # transposing the other side gives the same trace norm
    for _ in range(5):
        rho = random_density()
        n2 = trace_norm_hermitian(partial_transpose(rho, 2)) - 1.0
        assert negativity(rho) == pytest.approx(max(n2, 0.0), abs=1e-10)


def test_discord_anchors():
    bell = schmidt_state(math.pi / 4)
    assert geometric_discord(bell, 1) == pytest.approx(0.5, abs=1e-12)
    assert geometric_discord(bell, 2) == pytest.approx(0.5, abs=1e-12)
    assert geometric_discord(np.eye(4, dtype=complex) / 4.0, 1) == 0.0
    v = np.kron([0.6, 0.8], [1.0, 0.0]).astype(complex)
    assert geometric_discord(np.outer(v, v), 1) == pytest.approx(0.0, abs=1e-12)
    assert geometric_discord(np.outer(v, v), 2) == pytest.approx(0.0, abs=1e-12)


def test_discord_schmidt_closed_form():
    for chi in (0.0, math.pi / 16, math.pi / 8, 3 * math.pi / 16, math.pi / 4):
        want = math.sin(2.0 * chi) ** 2 / 2.0
        assert geometric_discord(schmidt_state(chi), 1) == pytest.approx(want, abs=1e-12)
        assert geometric_discord(schmidt_state(chi), 2) == pytest.approx(want, abs=1e-12)


def test_discord_local_unitary_invariance():
    """Both sides of the measure survive U1 (x) U2 conjugation."""
    for _ in range(5):
        rho = random_density()
        U1, U2 = random_local_unitaries()
        U = np.kron(U1, U2)
        rotated = U @ rho @ U.conj().T
        for side in (1, 2):
            assert geometric_discord(rotated, side) == pytest.approx(
                geometric_discord(rho, side), abs=1e-10)


def test_discord_rejects_bad_side():
    with pytest.raises(ValueError):
        geometric_discord(np.eye(4, dtype=complex) / 4.0, 0)


def test_discord_nonnegative_and_bounded():
    for _ in range(20):
        rho = random_density()
        for side in (1, 2):
            d = geometric_discord(rho, side)
            assert 0.0 <= d <= 0.5 + 1e-12


def test_hierarchy_on_random_states():
    # squared half-negativity never exceeds side-1 discord
    for _ in range(50):
        rho = random_density()
        n = negativity(rho)
        assert (n / 2.0) ** 2 <= geometric_discord(rho, 1) + 1e-12


def test_purity_values():
    assert purity(schmidt_state(0.3)) == pytest.approx(1.0, abs=1e-12)
    assert purity(np.eye(4, dtype=complex) / 4.0) == pytest.approx(0.25, abs=1e-14)


def test_sample_correlations_fields():
    rho = schmidt_state(math.pi / 4)
    s = sample_correlations(rho, 2.5)
    assert s.t == 2.5
    assert s.negativity == pytest.approx(1.0, abs=1e-12)
    assert s.discord_1 == pytest.approx(0.5, abs=1e-12)
    assert s.discord_2 == pytest.approx(0.5, abs=1e-12)
    assert s.purity == pytest.approx(1.0, abs=1e-12)
    assert s.min_eigenvalue == pytest.approx(0.0, abs=1e-12)
    assert s.trace_deviation == pytest.approx(0.0, abs=1e-12)


def test_sample_correlations_flags_trace_drift():
    s = sample_correlations(np.eye(4, dtype=complex) / 3.9, 0.0)
    assert abs(s.trace_deviation) > 1e-3
