"""Trapped-ion realization of the four-level model.

A single ion with four internal levels (a, b, c, d) driven by carrier,
red-sideband and blue-sideband lasers realizes the same 4x4 generator as
the direct builder in `dirac`. This module holds the parameter maps in
both directions and assembles the ionic Hamiltonian from Pauli operators
acting on level pairs. The two constructions must agree entrywise, which
is what pins down every sign convention below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dirac import DiracParams
from .errors import UnsupportedConfigurationError

LEVELS = {"a": 0, "b": 1, "c": 2, "d": 3}

_GEOMETRY_TOL = 1e-10


@dataclass(frozen=True)
class IonParams:
    """Laser parameters of the four-level ion (hbar = 1).

    delta is the carrier detuning, eta_delta_omega the combined
    sideband coupling eta * Delta * Omega-tilde (the velocity analog,
    c/2 = 1/2 in natural units), omega1 and omega2 the three carrier
    Rabi frequencies of the tensor and pseudotensor channels.
    """

    delta: float
    eta_delta_omega: float
    omega1: tuple
    omega2: tuple

    def __post_init__(self):
        vals = (self.delta, self.eta_delta_omega, *self.omega1, *self.omega2)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("all ion parameters must be finite")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if len(self.omega1) != 3 or len(self.omega2) != 3:
            raise ValueError("omega1 and omega2 must be 3-vectors")


def pair_sigma(axis: str, j: str, k: str) -> np.ndarray:
    """Pauli operator on the two-level subspace spanned by levels j, k.

    x: |j><k| + |k><j|, y: -i|j><k| + i|k><j|, z: |j><j| - |k><k|.
    """
    jj, kk = LEVELS[j], LEVELS[k]
    M = np.zeros((4, 4), dtype=complex)
    if axis == "x":
        M[jj, kk] = 1.0
        M[kk, jj] = 1.0
    elif axis == "y":
        M[jj, kk] = -1.0j
        M[kk, jj] = 1.0j
    elif axis == "z":
        M[jj, jj] = 1.0
        M[kk, kk] = -1.0
    else:
        raise ValueError("axis must be 'x', 'y' or 'z'")
    return M


def dirac_to_ion(params: DiracParams) -> IonParams:
    """Forward parameter map: delta = m/2, couplings Omega_j = coupling*E_j/2."""
    ex = params.E_field * math.cos(params.theta)
    ey = params.E_field * math.sin(params.theta)
    return IonParams(
        delta=params.m / 2.0,
        eta_delta_omega=0.5,
        omega1=(params.kappa * ex / 2.0, params.kappa * ey / 2.0, 0.0),
        omega2=(params.mu * ex / 2.0, params.mu * ey / 2.0, 0.0),
    )


def ion_to_dirac(ion: IonParams, p: float, kappa: float = None) -> DiracParams:
    """Invert the parameter map where the geometry allows it.

    The carrier vectors must lie in the xy plane and be parallel
    (within 1e-10), otherwise the configuration has no image in the
    restricted field geometry and an UnsupportedConfigurationError is
    raised. Only the products coupling*E_j are physical, so the split
    is conventional: kappa defaults to 1 with E carrying the magnitude,
    unless the caller pins kappa. When the tensor channel vanishes the
    direction is read from the pseudotensor channel instead (mu = 1,
    kappa = 0).
    """
    w1 = np.asarray(ion.omega1, dtype=float)
    w2 = np.asarray(ion.omega2, dtype=float)
    scale = max(1.0, float(np.max(np.abs(w1))), float(np.max(np.abs(w2))))
    if abs(w1[2]) > _GEOMETRY_TOL * scale or abs(w2[2]) > _GEOMETRY_TOL * scale:
        raise UnsupportedConfigurationError("carrier vectors must lie in the xy plane")
    if np.linalg.norm(np.cross(w1, w2)) > _GEOMETRY_TOL * scale * scale:
        raise UnsupportedConfigurationError("carrier vectors must be parallel")

    m = 2.0 * ion.delta
    # keep the map exact even when the sideband coupling is not c/2
    p_eff = 2.0 * ion.eta_delta_omega * p

    n1 = float(np.linalg.norm(w1))
    n2 = float(np.linalg.norm(w2))
    if n1 > _GEOMETRY_TOL * scale:
        k = 1.0 if kappa is None else kappa
        if k == 0.0:
            raise UnsupportedConfigurationError("kappa pinned to 0 but tensor channel is nonzero")
        evec = 2.0 * w1 / k
        E = float(np.linalg.norm(evec))
        theta = math.atan2(evec[1], evec[0])
        mu = 2.0 * float(np.dot(w2, evec)) / (E * E)  # signed projection
    elif n2 > _GEOMETRY_TOL * scale:
        evec = 2.0 * w2
        E = float(np.linalg.norm(evec))
        theta = math.atan2(evec[1], evec[0])
        k = 0.0
        mu = 1.0
    else:
        E = 0.0
        theta = math.pi / 4
        k = 1.0 if kappa is None else kappa
        mu = 0.0
    return DiracParams(m=m, p=p_eff, kappa=k, mu=mu, E_field=E, theta=theta)


def assemble_ion_hamiltonian(ion: IonParams, p: float) -> np.ndarray:
    """Four-level ionic Hamiltonian from Pauli operators on level pairs.

    Mass and kinetic parts act on the (a,d) and (b,c) pairs; the tensor
    channel couples (a,b) against (c,d); the pseudotensor channel acts
    back on (a,d), (b,c). The y pseudotensor term carries the pair order
    (a,d) minus (b,c): the opposite order fails the entrywise equality
    with the direct builder (see the sign tests).
    """
    sx, sy, sz = (lambda j, k: pair_sigma("x", j, k)), \
                 (lambda j, k: pair_sigma("y", j, k)), \
                 (lambda j, k: pair_sigma("z", j, k))
    w1x, w1y, w1z = ion.omega1
    w2x, w2y, w2z = ion.omega2
    H = 2.0 * ion.delta * (sz("a", "d") + sz("b", "c"))
    H = H + 2.0 * ion.eta_delta_omega * p * (sx("a", "d") + sx("b", "c"))
    H = H + 2.0 * w1x * (sx("a", "b") - sx("c", "d"))
    H = H + 2.0 * w1y * (sy("a", "b") - sy("c", "d"))
    H = H + 2.0 * w1z * (sz("a", "b") - sz("c", "d"))
    H = H + 2.0 * w2x * (-sy("a", "d") - sy("b", "c"))
    H = H + 2.0 * w2y * (sx("a", "d") - sx("b", "c"))
    H = H + 2.0 * w2z * (sy("b", "d") - sy("a", "c"))
    return H
