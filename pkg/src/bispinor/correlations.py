"""Two-qubit correlation measures on 4x4 states.

Negativity (trace norm of the partial transpose minus one), geometric
discord for either measured side via the Bloch/Fano decomposition, and
purity. Both measures are clamped at 1e-12 so CSV output never carries
negative zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (IDENTITY_2, PAULI, hermitian_eigensystem,
                     partial_transpose, tensor_product, trace_norm_hermitian)

CLAMP_TOL = 1e-12

_AXES = ("x", "y", "z")
_PAULI_1 = {i: tensor_product(PAULI[ax], IDENTITY_2) for i, ax in enumerate(_AXES)}
_PAULI_2 = {j: tensor_product(IDENTITY_2, PAULI[ax]) for j, ax in enumerate(_AXES)}
_PAULI_12 = {(i, j): tensor_product(PAULI[a], PAULI[b])
             for i, a in enumerate(_AXES) for j, b in enumerate(_AXES)}


@dataclass(frozen=True)
class FanoData:
    """Bloch vectors of each qubit and the 3x3 correlation matrix."""

    a1: np.ndarray
    a2: np.ndarray
    T: np.ndarray


@dataclass(frozen=True)
class CorrelationSample:
    """One trajectory point: measures plus numerical diagnostics."""

    t: float
    negativity: float
    discord_1: float
    discord_2: float
    purity: float
    min_eigenvalue: float
    trace_deviation: float


def _require_hermitian(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 state, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("state must be Hermitian")
    return rho


def fano_decompose(rho) -> FanoData:
    """Expansion coefficients over the local Pauli basis.

    a1_i = Tr[rho (s_i (x) I)], a2_j = Tr[rho (I (x) s_j)],
    T_ij = Tr[rho (s_i (x) s_j)]. Imaginary parts of the traces are
    checked small (< 1e-10) and discarded.
    """
    rho = _require_hermitian(rho)
    a1 = np.zeros(3)
    a2 = np.zeros(3)
    T = np.zeros((3, 3))
    worst_imag = 0.0
    for i in range(3):
        v = complex(np.trace(rho @ _PAULI_1[i]))
        worst_imag = max(worst_imag, abs(v.imag))
        a1[i] = v.real
        v = complex(np.trace(rho @ _PAULI_2[i]))
        worst_imag = max(worst_imag, abs(v.imag))
        a2[i] = v.real
        for j in range(3):
            v = complex(np.trace(rho @ _PAULI_12[(i, j)]))
            worst_imag = max(worst_imag, abs(v.imag))
            T[i, j] = v.real
    if worst_imag > 1e-10:
        raise ValueError(f"Pauli trace has imaginary part {worst_imag:g}")
    return FanoData(a1=a1, a2=a2, T=T)


def negativity(rho) -> float:
    """Trace norm of the qubit-1 partial transpose, minus one.

    Side choice is immaterial for two qubits (the two partial transposes
    are related by a full transpose). Values within 1e-12 of zero clamp
    to exactly 0.
    """
    rho = _require_hermitian(rho)
    val = trace_norm_hermitian(partial_transpose(rho, 1)) - 1.0
    return 0.0 if abs(val) < CLAMP_TOL else float(val)


def geometric_discord(rho, side: int) -> float:
    """Distance-based discord of the measured qubit (side 1 or 2).

    D = (||a_side||^2 + ||T||_F^2 - k_max) / 4 where k_max is the top
    eigenvalue of a1 a1^T + T T^T for side 1 and of a2 a2^T + T^T T for
    side 2. The transposed Gram matrix on side 2 keeps the measure
    invariant under local unitaries, which the naive T T^T would break.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    f = fano_decompose(rho)
    a = f.a1 if side == 1 else f.a2
    gram = f.T @ f.T.T if side == 1 else f.T.T @ f.T
    K = np.outer(a, a) + gram
    k_max = float(hermitian_eigensystem(K.astype(complex)).eigenvalues[-1])
    val = 0.25 * (float(a @ a) + float(np.sum(f.T * f.T)) - k_max)
    return 0.0 if abs(val) < CLAMP_TOL else float(val)


def purity(rho) -> float:
    """Tr[rho^2], between 1/4 (maximally mixed) and 1 (pure)."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def sample_correlations(rho, t: float) -> CorrelationSample:
    """All measures and diagnostics of one trajectory state."""
    rho = _require_hermitian(rho)
    eigs = hermitian_eigensystem(rho).eigenvalues
    return CorrelationSample(
        t=float(t),
        negativity=negativity(rho),
        discord_1=geometric_discord(rho, 1),
        discord_2=geometric_discord(rho, 2),
        purity=purity(rho),
        min_eigenvalue=float(eigs[0]),
        trace_deviation=float(np.trace(rho).real - 1.0),
    )
