"""Built-in acceptance battery.

Eleven numbered checks cover the package end to end: spectrum and
projector algebra, the ion-map equivalence, channel physicality, the
noiseless limit, correlation-measure anchors, trajectory features for
the catalog scenarios, the measure hierarchy, pure-state closed forms
and output determinism. The CLI `selftest` subcommand and the
acceptance test module both run exactly these functions, so the shipped
package can always re-verify itself.

Each criterion returns (ok, detail). Two feature checks (7 and 8) are
expected to fail under the implemented one-shot dephasing composition;
they are kept as stated rather than loosened, and their detail strings
report the measured values.
"""

from __future__ import annotations

import filecmp
import itertools
import json
import math
import tempfile
import time
from pathlib import Path

import numpy as np

from .correlations import geometric_discord, negativity
from .dirac import (DiracParams, build_dirac_hamiltonian, eigenprojectors,
                    eigenvalue_closed_form)
from .ionmap import assemble_ion_hamiltonian, dirac_to_ion
from .linalg import hermitian_eigensystem
from .noise import NoiseParams, build_kraus_set, evolve_noiseless, evolve_noisy
from .scenario import ScenarioConfig, initial_state, run_scenario, run_trajectory

GRID_M = (0.0, 0.5, 1.0, 10.0)
GRID_E = (0.5, 1.0, 2.0)
GRID_COUPLING = (0.5, 1.0)

#: the figure configuration: E/p = 1, kappa = mu = 1, Gamma/p = 1/2
FIG_KWARGS = dict(E_over_p=1.0, kappa=1.0, mu=1.0, gamma_over_p=0.5,
                  t_max=20.0, dt=0.01)


def _grid():
    for m, E, k, mu in itertools.product(GRID_M, GRID_E, GRID_COUPLING, GRID_COUPLING):
        yield DiracParams(m=m, p=1.0, kappa=k, mu=mu, E_field=E)


class AcceptanceCache:
    """Shares the expensive figure trajectories between criteria."""

    def __init__(self):
        self.started = time.monotonic()
        self._trajs = {}

    def traj(self, state: str, m: float):
        key = (state, m)
        if key not in self._trajs:
            cfg = ScenarioConfig(m_over_p=m, initial_state=state, **FIG_KWARGS)
            self._trajs[key] = run_trajectory(cfg)
        return self._trajs[key]

    def all_trajectories(self):
        for state, m in (("a", 1.0), ("cat", 0.0), ("cat", 1.0),
                         ("werner", 0.0), ("werner", 1.0)):
            yield self.traj(state, m)


def criterion_01(cache) -> tuple:
    """Closed-form eigenvalues match Jacobi diagonalization (rel 1e-10)."""
    worst = 0.0
    for params in _grid():
        closed = sorted(eigenvalue_closed_form(params, n, s)
                        for n in (0, 1) for s in (0, 1))
        numeric = hermitian_eigensystem(build_dirac_hamiltonian(params)).eigenvalues
        for lc, ln in zip(closed, numeric):
            worst = max(worst, abs(lc - ln) / abs(lc))
    anchors_ok = True
    got0 = sorted(eigenvalue_closed_form(DiracParams(0.0, 1.0, 1.0, 1.0, 1.0), n, s)
                  for n in (0, 1) for s in (0, 1))
    want0 = [-math.sqrt(5.0), -1.0, 1.0, math.sqrt(5.0)]
    got1 = sorted(eigenvalue_closed_form(DiracParams(1.0, 1.0, 1.0, 1.0, 1.0), n, s)
                  for n in (0, 1) for s in (0, 1))
    want1 = sorted(sgn * math.sqrt(4.0 + pm * 2.0 * math.sqrt(2.0))
                   for sgn in (1.0, -1.0) for pm in (1.0, -1.0))
    for got, want in ((got0, want0), (got1, want1)):
        anchors_ok &= all(abs(g - w) <= 1e-10 * abs(w) for g, w in zip(got, want))
    ok = worst <= 1e-10 and anchors_ok
    return ok, f"worst relative deviation {worst:.3g} over 48 grid points, anchors ok: {anchors_ok}"


def criterion_02(cache) -> tuple:
    """Projector completeness, orthogonality, idempotence, trace, eigenrelation."""
    worst = 0.0
    eye = np.eye(4)
    for params in _grid():
        sd = eigenprojectors(params)
        keys = list(sd.projectors)
        total = sum(sd.projectors[k] for k in keys)
        worst = max(worst, float(np.max(np.abs(total - eye))))
        H = build_dirac_hamiltonian(params)
        for k1 in keys:
            P1 = sd.projectors[k1]
            worst = max(worst, abs(np.trace(P1) - 1.0))
            worst = max(worst, float(np.max(np.abs(H @ P1 - sd.lambdas[k1] * P1))))
            for k2 in keys:
                expect = P1 if k1 == k2 else 0.0
                worst = max(worst, float(np.max(np.abs(
                    sd.projectors[k1] @ sd.projectors[k2] - expect))))
    return worst <= 1e-10, f"worst deviation {worst:.3g} across all grid points"


def criterion_03(cache) -> tuple:
    """Ion assembly equals the direct builder entrywise to 1e-12."""
    worst = 0.0
    for params in _grid():
        direct = build_dirac_hamiltonian(params)
        mapped = assemble_ion_hamiltonian(dirac_to_ion(params), params.p)
        worst = max(worst, float(np.max(np.abs(direct - mapped))))
    return worst <= 1e-12, f"worst entrywise deviation {worst:.3g}"


def criterion_04(cache) -> tuple:
    """Kraus completeness plus physical-state diagnostics on every sample."""
    worst_kraus = 0.0
    eye = np.eye(4)
    for gamma in (0.0, 0.5, 2.0):
        for t in (0.0, 0.7, 5.0, 50.0):
            ks = build_kraus_set(NoiseParams(gamma), t)
            total = sum(K.conj().T @ K for K in ks.operators)
            worst_kraus = max(worst_kraus, float(np.max(np.abs(total - eye))))
    worst_trace = 0.0
    worst_eig = 0.0
    pur_lo, pur_hi = 1.0, 0.0
    for traj in cache.all_trajectories():
        for s in traj.samples:
            worst_trace = max(worst_trace, abs(s.trace_deviation))
            worst_eig = min(worst_eig, s.min_eigenvalue)
            pur_lo = min(pur_lo, s.purity)
            pur_hi = max(pur_hi, s.purity)
    ok = (worst_kraus <= 1e-12 and worst_trace <= 1e-10
          and worst_eig >= -1e-9 and 0.25 - 1e-9 <= pur_lo and pur_hi <= 1.0 + 1e-9)
    return ok, (f"kraus dev {worst_kraus:.3g}, trace dev {worst_trace:.3g}, "
                f"min eig {worst_eig:.3g}, purity in [{pur_lo:.6g}, {pur_hi:.6g}]")


def criterion_05(cache) -> tuple:
    """Gamma = 0 noisy evolution equals the projector-sum evolution."""
    params = DiracParams(m=1.0, p=1.0, kappa=1.0, mu=1.0, E_field=1.0)
    quiet = NoiseParams(0.0)
    worst = 0.0
    for name in ("a", "cat", "werner"):
        rho0 = initial_state(name)
        for t in (0.5, 1.0, 5.0, 20.0):
            dev = np.max(np.abs(evolve_noisy(rho0, params, quiet, t)
                                - evolve_noiseless(rho0, params, t)))
            worst = max(worst, float(dev))
    return worst <= 1e-10, f"worst deviation {worst:.3g}"


def criterion_06(cache) -> tuple:
    """Anchor values of the correlation measures."""
    bell = initial_state("cat")  # (|00> + |11>)/sqrt(2)
    devs = [abs(negativity(bell) - 1.0), abs(geometric_discord(bell, 1) - 0.5)]
    v1 = np.array([math.cos(0.3), math.sin(0.3)], dtype=complex)
    v2 = np.array([math.cos(1.1), math.sin(1.1) * np.exp(0.4j)], dtype=complex)
    product = np.outer(np.kron(v1, v2), np.kron(v1, v2).conj())
    for rho in (initial_state("a"), product, np.eye(4, dtype=complex) / 4.0):
        devs.append(abs(negativity(rho)))
        devs.append(abs(geometric_discord(rho, 1)))
        devs.append(abs(geometric_discord(rho, 2)))
    iso = 0.5 * bell + 0.5 * np.eye(4) / 4.0
    devs.append(abs(negativity(iso) - 0.25))
    worst = max(devs)
    return worst <= 1e-10, f"worst anchor deviation {worst:.3g}"


def _death_intervals(traj, eps_dead: float, min_span: float):
    neg = [s.negativity for s in traj.samples]
    times = [s.t for s in traj.samples]
    runs = []
    k = 0
    while k < len(neg):
        if neg[k] < eps_dead:
            j = k
            while j + 1 < len(neg) and neg[j + 1] < eps_dead:
                j += 1
            if times[j] - times[k] >= min_span - 1e-12:
                runs.append((k, j))
            k = j + 1
        else:
            k += 1
    return runs


def criterion_07(cache) -> tuple:
    """Death interval, revival, and residual discord for the diagonal start."""
    traj = cache.traj("a", 1.0)
    neg = [s.negativity for s in traj.samples]
    runs = _death_intervals(traj, 1e-6, 0.1)
    has_death = len(runs) >= 1
    has_revival = False
    if has_death:
        end = runs[0][1]
        has_revival = any(v > 1e-2 for v in neg[end + 1:])
    discord_ok = has_death and all(
        min(traj.samples[i].discord_1 for i in range(k0, k1 + 1)) > 1e-4
        for k0, k1 in runs)
    ok = has_death and has_revival and discord_ok
    return ok, (f"death intervals (span >= 0.1): {len(runs)}, revival: {has_revival}, "
                f"residual discord ok: {discord_ok}; "
                f"min N after t=0 is {min(neg[1:]):.3g}")


def criterion_08(cache) -> tuple:
    """Entanglement floor and oscillation for the superposition starts."""
    details = []
    ok = True
    for state in ("cat", "werner"):
        for m in (0.0, 1.0):
            neg = [s.negativity for s in cache.traj(state, m).samples]
            times = [s.t for s in cache.traj(state, m).samples]
            n_min, n_max = min(neg), max(neg)
            floor_ok = n_min > 1e-3
            osc_ok = (n_max - n_min) > 0.05
            late = max(v for v, t in zip(neg, times) if t >= 0.75 * times[-1])
            late_ok = late < 1.0
            ok = ok and floor_ok and osc_ok and late_ok
            details.append(f"{state} m={m:g}: min N {n_min:.3g}"
                           + ("" if floor_ok else " (< 1e-3)"))
    return ok, "; ".join(details)


def criterion_09(cache) -> tuple:
    """(N/2)^2 <= D1 + 1e-9 on every sample of every acceptance run."""
    worst = -1.0
    for traj in cache.all_trajectories():
        for s in traj.samples:
            worst = max(worst, (s.negativity / 2.0) ** 2 - s.discord_1)
    return worst <= 1e-9, f"worst (N/2)^2 - D1 = {worst:.3g}"


def criterion_10(cache) -> tuple:
    """Schmidt-state closed forms: N = |sin 2chi|, D = sin^2(2chi)/2."""
    worst = 0.0
    for k in range(5):
        chi = k * math.pi / 16.0
        vec = np.zeros(4, dtype=complex)
        vec[0] = math.cos(chi)
        vec[3] = math.sin(chi)
        rho = np.outer(vec, vec.conj())
        worst = max(worst, abs(negativity(rho) - abs(math.sin(2.0 * chi))))
        worst = max(worst, abs(geometric_discord(rho, 1) - math.sin(2.0 * chi) ** 2 / 2.0))
    return worst <= 1e-10, f"worst closed-form deviation {worst:.3g}"


def criterion_11(cache) -> tuple:
    """Byte-identical reruns, lossless report round-trip, selftest under 60 s."""
    with tempfile.TemporaryDirectory() as tmp:
        cfgs = []
        for sub in ("one", "two"):
            cfgs.append(ScenarioConfig(m_over_p=1.0, initial_state="a",
                                       E_over_p=1.0, kappa=1.0, mu=1.0,
                                       gamma_over_p=0.5, t_max=5.0, dt=0.01,
                                       outputs=str(Path(tmp) / sub)))
        (cfg1, report, _), (cfg2, _, _) = run_scenario([cfgs[0]])[0], run_scenario([cfgs[1]])[0]
        identical = filecmp.cmp(Path(cfg1.outputs) / "trajectory.csv",
                                Path(cfg2.outputs) / "trajectory.csv", shallow=False)
        text = (Path(cfg1.outputs) / "report.json").read_text()
        parsed = json.loads(text)
        round_trip = (json.loads(json.dumps(parsed)) == parsed
                      and parsed["min_negativity"] == report.min_negativity
                      and parsed["max_negativity"] == report.max_negativity
                      and parsed["final_purity"] == report.final_purity
                      and parsed["revival_count"] == report.revival_count
                      and [tuple(x) for x in parsed["death_intervals"]]
                      == list(report.death_intervals))
    elapsed = time.monotonic() - cache.started
    ok = identical and round_trip and elapsed < 60.0
    return ok, (f"byte-identical reruns: {identical}, lossless round-trip: "
                f"{round_trip}, elapsed {elapsed:.1f} s")


CRITERIA = (
    (1, "closed-form spectrum vs Jacobi", criterion_01),
    (2, "analytic projector suite", criterion_02),
    (3, "ion assembly equals direct builder", criterion_03),
    (4, "channel CPTP and physical samples", criterion_04),
    (5, "zero-rate channel matches coherent path", criterion_05),
    (6, "correlation measure anchors", criterion_06),
    (7, "death and revival features, diagonal start", criterion_07),
    (8, "entanglement floor, superposition starts", criterion_08),
    (9, "negativity-discord hierarchy", criterion_09),
    (10, "pure-state closed forms", criterion_10),
    (11, "determinism and serialization", criterion_11),
)


def run_selftest(stream=None) -> bool:
    """Run all criteria, print one PASS/FAIL line each, return overall truth."""
    emit = stream if stream is not None else print
    cache = AcceptanceCache()
    all_ok = True
    for number, label, func in CRITERIA:
        try:
            ok, detail = func(cache)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        emit(f"criterion {number:02d} [{label}]: {'PASS' if ok else 'FAIL'} - {detail}")
    emit(f"selftest {'PASSED' if all_ok else 'FAILED'} "
         f"({time.monotonic() - cache.started:.1f} s)")
    return all_ok
