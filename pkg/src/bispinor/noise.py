"""Local dephasing channel and its composition with the coherent dynamics.

Each qubit dephases independently at the same rate Gamma. The channel is
applied in one shot at elapsed time t through four diagonal Kraus
operators (products of per-qubit pairs), which is equivalent to an
elementwise rescaling of the density-matrix entries: single coherences
pick up gamma = exp(-Gamma t / 2), double coherences gamma^2, populations
are untouched. The noisy state at time t is the channel output rotated by
the coherent evolution operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dirac import DiracParams, eigenprojectors
from .errors import DegenerateSpectrumError, InvariantViolation
from .linalg import hermitian_eigensystem, tensor_product

#: DensityMatrix invariant tolerances
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9


@dataclass(frozen=True)
class NoiseParams:
    """Phase relaxation rate Gamma, applied equally to both qubits."""

    gamma_rate: float

    def __post_init__(self):
        if not math.isfinite(self.gamma_rate) or self.gamma_rate < 0:
            raise ValueError("gamma_rate must be finite and nonnegative")


@dataclass(frozen=True)
class KrausSet:
    """The four diagonal operators {F_nu E_mu} at a fixed (Gamma, t)."""

    operators: tuple
    gamma_factor: float
    omega_factor: float


def build_kraus_set(noise: NoiseParams, t: float) -> KrausSet:
    """Kraus operators of two-sided dephasing after elapsed time t.

    E1 = diag(1, gamma) (x) I, E2 = diag(0, omega) (x) I on qubit 1 and
    the mirrored F pair on qubit 2, with gamma = exp(-Gamma t / 2) and
    omega = sqrt(1 - exp(-Gamma t)). Returns the four products F_nu E_mu.
    At t = 0 (or Gamma = 0) the set degenerates to {I, 0, 0, 0}.
    """
    if t < 0:
        raise ValueError("channel is defined forward in time only (t >= 0)")
    decay = math.exp(-noise.gamma_rate * t)
    gamma = math.sqrt(decay)
    omega = math.sqrt(1.0 - decay)
    i2 = np.eye(2, dtype=complex)
    e1 = tensor_product(np.diag([1.0, gamma]).astype(complex), i2)
    e2 = tensor_product(np.diag([0.0, omega]).astype(complex), i2)
    f1 = tensor_product(i2, np.diag([1.0, gamma]).astype(complex))
    f2 = tensor_product(i2, np.diag([0.0, omega]).astype(complex))
    ops = tuple(f @ e for f in (f1, f2) for e in (e1, e2))
    return KrausSet(operators=ops, gamma_factor=gamma, omega_factor=omega)


def coefficient_matrix(ks: KrausSet) -> np.ndarray:
    """Elementwise form of the channel: rho_kl -> c_kl * rho_kl."""
    g = ks.gamma_factor
    return np.array([
        [1.0, g, g, g * g],
        [g, 1.0, g * g, g],
        [g, g * g, 1.0, g],
        [g * g, g, g, 1.0],
    ])


def apply_channel(rho, ks: KrausSet) -> np.ndarray:
    """Operator-sum action of the dephasing channel.

    Rejects Kraus sets that fail trace preservation (sum K^dag K = I to
    1e-12). The operators are real diagonal, so the dagger placement is
    immaterial; the standard K rho K^dag form is used.
    """
    rho = np.asarray(rho, dtype=complex)
    total = sum(K.conj().T @ K for K in ks.operators)
    if np.max(np.abs(total - np.eye(4))) > 1e-12:
        raise ValueError("Kraus set failed the completeness check")
    out = np.zeros((4, 4), dtype=complex)
    for K in ks.operators:
        out += K @ rho @ K.conj().T
    return out


def validate_density_matrix(rho, where: str = "density matrix") -> np.ndarray:
    """Check the DensityMatrix invariants, returning the validated array.

    Hermitian to 1e-10, unit trace to 1e-10, smallest eigenvalue above
    -1e-9 and purity inside [1/4 - 1e-9, 1 + 1e-9]. Violations raise
    InvariantViolation naming the failed check.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvariantViolation(f"{where}: expected shape (4, 4), got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise InvariantViolation(f"{where}: not Hermitian to {HERMITICITY_TOL:g}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvariantViolation(f"{where}: trace {tr} deviates from 1")
    min_eig = float(hermitian_eigensystem(rho).eigenvalues[0])
    if min_eig < -PSD_TOL:
        raise InvariantViolation(f"{where}: negative eigenvalue {min_eig:g}")
    pur = float(np.trace(rho @ rho).real)
    if not (0.25 - PSD_TOL <= pur <= 1.0 + PSD_TOL):
        raise InvariantViolation(f"{where}: purity {pur:g} out of [1/4, 1]")
    return rho


@lru_cache(maxsize=64)
def _spectral_or_none(params: DiracParams):
    """Analytic spectral data, or None when the spectrum is degenerate."""
    try:
        return eigenprojectors(params)
    except DegenerateSpectrumError:
        return None


@lru_cache(maxsize=64)
def _hamiltonian_eigensystem(params: DiracParams):
    from .dirac import build_dirac_hamiltonian

    return hermitian_eigensystem(build_dirac_hamiltonian(params))


def evolve_noiseless(rho0, params: DiracParams, t: float) -> np.ndarray:
    """Coherent evolution of a state for time t.

    Nondegenerate spectra use the projector-sum form
    rho(t) = sum_{ns,ml} exp(-i (lambda_ns - lambda_ml) t) P_ns rho0 P_ml;
    degenerate ones route automatically to U(t) rho0 U(t)^dag with U built
    from the numeric eigensystem. The two paths agree to 1e-10 wherever
    both apply, and either preserves purity.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    spectral = _spectral_or_none(params)
    if spectral is None:
        es = _hamiltonian_eigensystem(params)
        phases = np.exp(-1j * es.eigenvalues * t)
        U = (es.eigenvectors * phases) @ es.eigenvectors.conj().T
        return U @ rho0 @ U.conj().T
    keys = list(spectral.projectors)
    left = {key: spectral.projectors[key] @ rho0 for key in keys}
    out = np.zeros((4, 4), dtype=complex)
    for k1 in keys:
        for k2 in keys:
            phase = np.exp(-1j * (spectral.lambdas[k1] - spectral.lambdas[k2]) * t)
            out += phase * (left[k1] @ spectral.projectors[k2])
    return out


def evolve_noisy(rho0, params: DiracParams, noise: NoiseParams, t: float) -> np.ndarray:
    """Noisy state at elapsed time t: one-shot channel, then rotation.

    rho(t) = U(t) [channel_t(rho0)] U(t)^dag. Reduces to evolve_noiseless
    when Gamma = 0 (the omega Kraus members vanish).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    ks = build_kraus_set(noise, t)
    dephased = apply_channel(rho0, ks)
    return evolve_noiseless(dephased, params, t)
