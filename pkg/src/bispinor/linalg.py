"""Dense complex linear algebra for matrices up to 4x4.

Everything the rest of the package needs is here: Kronecker products on
qubit factors, a cyclic complex Jacobi eigensolver for Hermitian matrices,
partial transposition, the Hermitian trace norm and spectral evolution
operators. Matrices are plain complex numpy arrays; all operations are
pure functions and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

#: sweep budget for the Jacobi iteration; random 4x4 inputs converge in <= 6
JACOBI_MAX_SWEEPS = 50
JACOBI_DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(M, dims=(2, 3, 4)) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] not in dims:
        raise ValueError(f"unsupported dimension {A.shape[0]}, expected one of {dims}")
    return A


def _max_norm(A) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def _require_hermitian(A, what: str) -> None:
    # relative max-norm test, per the module tolerance conventions
    if _max_norm(A - A.conj().T) > 1e-12 * max(1.0, _max_norm(A)):
        raise ValueError(f"{what} must be Hermitian")


def tensor_product(A, B) -> np.ndarray:
    """Kronecker product of two 2x2 matrices in basis order |00>,|01>,|10>,|11>.

    Parameters
    ----------
    A, B : 2x2 array_like
        Factors acting on qubit 1 and qubit 2 respectively.

    Returns
    -------
    numpy.ndarray
        The 4x4 product with (A (x) B)[2i+k, 2j+l] = A[i,j] B[k,l].
    """
    A = _as_square(A, dims=(2,))
    B = _as_square(B, dims=(2,))
    return np.kron(A, B)


def hermitian_eigensystem(H, tol: float = JACOBI_DEFAULT_TOL) -> EigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps run over all (p, q) pairs until the off-diagonal Frobenius mass
    drops below ``tol``. Eigenvalues are returned ascending; each
    eigenvector's phase is fixed by making its largest-magnitude component
    real and positive (ties broken by lowest index) so results are
    reproducible.

    Parameters
    ----------
    H : array_like, dim in {2, 3, 4}
        Hermitian input.
    tol : float
        Convergence threshold on sqrt(sum of squared off-diagonal moduli).

    Returns
    -------
    EigenSystem

    Raises
    ------
    ValueError
        If the input is not Hermitian.
    ConvergenceError
        If the sweep budget (50) is exhausted.
    """
    A = _as_square(H)
    _require_hermitian(A, "eigensystem input")
    n = A.shape[0]
    A = (A + A.conj().T) / 2.0  # scrub roundoff asymmetry
    V = np.eye(n, dtype=complex)

    def off_mass(M):
        # summed from the entries themselves; the sqrt(|M|_F^2 - diag^2)
        # shortcut bottoms out near sqrt(eps) and can never reach tol
        mask = ~np.eye(n, dtype=bool)
        return float(np.sqrt(np.sum(np.abs(M[mask]) ** 2)))

    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        if off_mass(A) <= tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                J = np.eye(n, dtype=complex)
                J[p, p] = c
                J[q, q] = c
                J[p, q] = s * phase
                J[q, p] = -s * np.conj(phase)
                A = J.conj().T @ A @ J
                V = V @ J
    if not converged and off_mass(A) > tol:
        raise ConvergenceError(
            f"Jacobi iteration did not reach tol={tol:g} in "
            f"{JACOBI_MAX_SWEEPS} sweeps (off-diagonal mass {off_mass(A):g})"
        )

    lam = np.diag(A).real.copy()
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    V = V[:, order]
    for k in range(n):
        col = V[:, k]
        idx = int(np.argmax(np.abs(col)))  # first maximal index on ties
        piv = col[idx]
        if abs(piv) > 0.0:
            V[:, k] = col * (np.conj(piv) / abs(piv))
    return EigenSystem(eigenvalues=lam, eigenvectors=V)


def partial_transpose(rho, subsystem: int) -> np.ndarray:
    """Transpose one qubit factor of a 4x4 two-qubit operator.

    Parameters
    ----------
    rho : 4x4 array_like
    subsystem : int
        1 transposes the first qubit's indices, 2 the second's.

    Returns
    -------
    numpy.ndarray
        Entry permutation only, so trace and Hermiticity survive exactly;
        applying the same transpose twice returns the input.
    """
    A = _as_square(rho, dims=(4,))
    blocks = A.reshape(2, 2, 2, 2)  # indices (i, k, j, l): row qubits, col qubits
    if subsystem == 1:
        out = blocks.transpose(2, 1, 0, 3)
    elif subsystem == 2:
        out = blocks.transpose(0, 3, 2, 1)
    else:
        raise ValueError("subsystem must be 1 or 2")
    return out.reshape(4, 4).copy()


def trace_norm_hermitian(M) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    A = _as_square(M)
    _require_hermitian(A, "trace norm input")
    es = hermitian_eigensystem(A)
    return float(np.sum(np.abs(es.eigenvalues)))


def evolution_operator(H, t: float) -> np.ndarray:
    """U(t) = exp(-i H t) assembled spectrally from the Jacobi eigensystem.

    Parameters
    ----------
    H : array_like
        Hermitian generator.
    t : float
        Elapsed time; U(0) is the identity and U(t) U(-t) = I.
    """
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    es = hermitian_eigensystem(H)
    phases = np.exp(-1j * es.eigenvalues * t)
    return (es.eigenvectors * phases) @ es.eigenvectors.conj().T
