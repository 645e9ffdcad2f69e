"""Scenario catalog, trajectory runner, feature detection and file outputs.

A scenario fixes the physical ratios (everything is expressed in units of
the momentum p, which is set to 1 internally), an initial state from the
catalog, a sampling grid and output options. Configs are flat key=value
text files. Multiple comma-separated m_over_p values turn a run into a
sweep writing one subdirectory per grid point plus an index file.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .correlations import CorrelationSample, sample_correlations
from .dirac import DiracParams
from .errors import InvariantViolation, UsageError
from .noise import NoiseParams, evolve_noisy, validate_density_matrix

STATE_NAMES = ("a", "b", "c", "d", "cat", "werner", "custom")

DEFAULT_EPS_DEAD = 1e-6
DEFAULT_EPS_ALIVE = 1e-2

_CONFIG_KEYS = (
    "m_over_p", "E_over_p", "kappa", "mu", "theta", "gamma_over_p",
    "initial_state", "custom_state", "t_max", "dt", "outputs",
    "emit_plots", "eps_dead", "eps_alive",
)


@dataclass(frozen=True)
class ScenarioConfig:
    """One resolved grid point of a run (ratios are in units of p)."""

    m_over_p: float = 1.0
    E_over_p: float = 1.0
    kappa: float = 1.0
    mu: float = 1.0
    theta: float = math.pi / 4
    gamma_over_p: float = 0.5
    initial_state: str = "a"
    custom_state: tuple = None
    t_max: float = 20.0
    dt: float = 0.01
    outputs: str = "./out"
    emit_plots: bool = False
    eps_dead: float = DEFAULT_EPS_DEAD
    eps_alive: float = DEFAULT_EPS_ALIVE

    def __post_init__(self):
        if not (self.t_max > 0 and self.dt > 0 and self.dt <= self.t_max):
            raise UsageError("need t_max > 0, dt > 0 and dt <= t_max")
        if self.initial_state not in STATE_NAMES:
            raise UsageError(
                f"unknown initial_state '{self.initial_state}'; "
                f"valid names: {', '.join(STATE_NAMES)}"
            )
        if self.initial_state == "custom" and self.custom_state is None:
            raise UsageError("initial_state = custom requires a custom_state entry")
        if self.initial_state != "custom" and self.custom_state is not None:
            raise UsageError("custom_state is only meaningful with initial_state = custom")


@dataclass(frozen=True)
class TrajectoryRecord:
    config: ScenarioConfig
    samples: tuple
    wall_time: float


@dataclass(frozen=True)
class FeatureReport:
    """Sudden-death intervals and revival bookkeeping for one trajectory."""

    death_intervals: tuple
    revival_count: int
    min_negativity: float
    max_negativity: float
    residual_discord_in_death: float  # None when no death interval exists
    final_purity: float


def initial_state(name: str, custom=None) -> np.ndarray:
    """Density matrix of a catalog state.

    a, b, c, d are the four basis levels; cat is (|a> + |d>)/sqrt(2),
    werner is (|b> + |c>)/sqrt(2). A custom 4x4 matrix must pass the
    density-matrix validation.
    """
    if name not in STATE_NAMES:
        raise UsageError(
            f"unknown initial state '{name}'; valid names: {', '.join(STATE_NAMES)}"
        )
    if name == "custom":
        if custom is None:
            raise UsageError("custom initial state requires a matrix")
        return validate_density_matrix(
            np.asarray(custom, dtype=complex).reshape(4, 4), where="custom state"
        )
    vec = np.zeros(4, dtype=complex)
    if name in ("a", "b", "c", "d"):
        vec["abcd".index(name)] = 1.0
    elif name == "cat":
        vec[0] = vec[3] = 1.0 / math.sqrt(2.0)
    else:  # werner
        vec[1] = vec[2] = 1.0 / math.sqrt(2.0)
    return np.outer(vec, vec.conj())


def _check_sample(s: CorrelationSample) -> None:
    checks = (
        ("trace deviation", abs(s.trace_deviation) <= 1e-10, s.trace_deviation),
        ("positivity", s.min_eigenvalue >= -1e-9, s.min_eigenvalue),
        ("purity range", 0.25 - 1e-9 <= s.purity <= 1.0 + 1e-9, s.purity),
        ("negativity range", 0.0 <= s.negativity <= 1.0 + 1e-9, s.negativity),
        ("discord_1 range", 0.0 <= s.discord_1 <= 0.5 + 1e-9, s.discord_1),
        ("discord_2 range", 0.0 <= s.discord_2 <= 0.5 + 1e-9, s.discord_2),
        ("hierarchy (N/2)^2 <= D1",
         (s.negativity / 2.0) ** 2 <= s.discord_1 + 1e-9, s.negativity),
    )
    for name, ok, value in checks:
        if not ok:
            raise InvariantViolation(
                f"{name} violated at t = {s.t:g} (value {value:g})"
            )


def scenario_params(config: ScenarioConfig) -> DiracParams:
    """DiracParams of a config point, with p = 1 fixing the unit system."""
    return DiracParams(m=config.m_over_p, p=1.0, kappa=config.kappa,
                       mu=config.mu, E_field=config.E_over_p, theta=config.theta)


def run_trajectory(config: ScenarioConfig) -> TrajectoryRecord:
    """Sample the noisy evolution on {0, dt, ..., t_max}.

    The t = 0 row is computed from the initial state itself. Every
    sample is checked against its invariants; a violation aborts with a
    diagnostic naming the check and the sample time. The pipeline has no
    randomness, so identical configs give identical records.
    """
    started = time.perf_counter()
    params = scenario_params(config)
    noise = NoiseParams(gamma_rate=config.gamma_over_p)
    rho0 = initial_state(config.initial_state, config.custom_state)
    n_steps = int(math.floor(config.t_max / config.dt + 1e-9))
    samples = []
    for k in range(n_steps + 1):
        t = k * config.dt
        rho = rho0 if k == 0 else evolve_noisy(rho0, params, noise, t)
        s = sample_correlations(rho, t)
        _check_sample(s)
        samples.append(s)
    return TrajectoryRecord(config=config, samples=tuple(samples),
                            wall_time=time.perf_counter() - started)


def detect_features(traj: TrajectoryRecord,
                    eps_dead: float = DEFAULT_EPS_DEAD,
                    eps_alive: float = DEFAULT_EPS_ALIVE) -> FeatureReport:
    """Locate sudden-death intervals and count revivals.

    A death interval is a maximal run of at least two consecutive samples
    with negativity below eps_dead; it counts as revived when any later
    sample exceeds eps_alive. residual_discord_in_death is the smallest
    discord_1 seen inside death intervals (None when there are none).
    """
    if not traj.samples:
        raise ValueError("empty trajectory")
    neg = [s.negativity for s in traj.samples]
    times = [s.t for s in traj.samples]
    n = len(neg)
    intervals = []  # (start index, end index) inclusive
    k = 0
    while k < n:
        if neg[k] < eps_dead:
            j = k
            while j + 1 < n and neg[j + 1] < eps_dead:
                j += 1
            if j > k:  # at least two samples
                intervals.append((k, j))
            k = j + 1
        else:
            k += 1
    revivals = 0
    for _, j in intervals:
        if any(neg[i] > eps_alive for i in range(j + 1, n)):
            revivals += 1
    residual = None
    if intervals:
        residual = min(traj.samples[i].discord_1
                       for (k0, k1) in intervals for i in range(k0, k1 + 1))
    return FeatureReport(
        death_intervals=tuple((times[k0], times[k1]) for k0, k1 in intervals),
        revival_count=revivals,
        min_negativity=min(neg),
        max_negativity=max(neg),
        residual_discord_in_death=residual,
        final_purity=traj.samples[-1].purity,
    )


def config_echo(config: ScenarioConfig) -> dict:
    custom = None
    if config.custom_state is not None:
        custom = [[complex(z).real, complex(z).imag] for z in config.custom_state]
    return {
        "m_over_p": config.m_over_p,
        "E_over_p": config.E_over_p,
        "kappa": config.kappa,
        "mu": config.mu,
        "theta": config.theta,
        "gamma_over_p": config.gamma_over_p,
        "initial_state": config.initial_state,
        "custom_state": custom,
        "t_max": config.t_max,
        "dt": config.dt,
        "outputs": config.outputs,
        "emit_plots": config.emit_plots,
        "eps_dead": config.eps_dead,
        "eps_alive": config.eps_alive,
    }


CSV_HEADER = "t,negativity,discord_1,discord_2,purity,min_eigenvalue,trace_deviation"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_outputs(traj: TrajectoryRecord, report: FeatureReport,
                 config: ScenarioConfig) -> list:
    """Write trajectory.csv, report.json and (optionally) the SVG charts.

    Returns the list of written paths. Cells carry 12 significant digits;
    identical configs reproduce the files byte for byte.
    """
    out_dir = Path(config.outputs)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out_dir / "trajectory.csv"
    lines = [CSV_HEADER]
    for s in traj.samples:
        lines.append(",".join(_fmt(v) for v in (
            s.t, s.negativity, s.discord_1, s.discord_2,
            s.purity, s.min_eigenvalue, s.trace_deviation,
        )))
    csv_path.write_text("\n".join(lines) + "\n")
    written.append(csv_path)

    report_path = out_dir / "report.json"
    payload = {
        "death_intervals": [[a, b] for a, b in report.death_intervals],
        "revival_count": report.revival_count,
        "min_negativity": report.min_negativity,
        "max_negativity": report.max_negativity,
        "residual_discord_in_death": report.residual_discord_in_death,
        "final_purity": report.final_purity,
        "config": config_echo(config),
    }
    report_path.write_text(json.dumps(payload, indent=2) + "\n")
    written.append(report_path)

    if config.emit_plots:
        ts = [s.t for s in traj.samples]
        neg_path = out_dir / "negativity.svg"
        _write_svg_chart(neg_path, "negativity", ts,
                         [("negativity", [s.negativity for s in traj.samples], "#1f4e9c")])
        written.append(neg_path)
        dis_path = out_dir / "discord.svg"
        _write_svg_chart(dis_path, "geometric discord", ts,
                         [("discord_1", [s.discord_1 for s in traj.samples], "#1f4e9c"),
                          ("discord_2", [s.discord_2 for s in traj.samples], "#b5541c")])
        written.append(dis_path)
    return written


def _write_svg_chart(path: Path, title: str, ts, series) -> None:
    # minimal hand-rolled line chart: frame, ticks, one polyline per series
    width, height = 640, 400
    ml, mr, mt, mb = 60, 20, 30, 40
    pw, ph = width - ml - mr, height - mt - mb
    t_max = ts[-1] if ts[-1] > 0 else 1.0
    y_max = max(1e-12, max(max(vals) for _, vals, _ in series))

    def px(t):
        return ml + pw * t / t_max

    def py(v):
        return mt + ph * (1.0 - v / y_max)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{ml}" y="18" font-family="sans-serif" font-size="13">{title}</text>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        t = t_max * i / 4
        x = px(t)
        parts.append(f'<line x1="{x:.2f}" y1="{mt + ph}" x2="{x:.2f}" '
                     f'y2="{mt + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{mt + ph + 18}" font-family="sans-serif" '
                     f'font-size="11" text-anchor="middle">{t:.3g}</text>')
        v = y_max * i / 4
        y = py(v)
        parts.append(f'<line x1="{ml - 5}" y1="{y:.2f}" x2="{ml}" y2="{y:.2f}" '
                     f'stroke="black"/>')
        parts.append(f'<text x="{ml - 8}" y="{y + 4:.2f}" font-family="sans-serif" '
                     f'font-size="11" text-anchor="end">{v:.3g}</text>')
    parts.append(f'<text x="{ml + pw / 2}" y="{height - 8}" font-family="sans-serif" '
                 f'font-size="12" text-anchor="middle">p t</text>')
    for idx, (label, vals, color) in enumerate(series):
        pts = " ".join(f"{px(t):.2f},{py(v):.2f}" for t, v in zip(ts, vals))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.2"/>')
        parts.append(f'<text x="{width - mr - 6}" y="{mt + 16 + 16 * idx}" '
                     f'font-family="sans-serif" font-size="11" text-anchor="end" '
                     f'fill="{color}">{label}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


def _parse_bool(raw: str, key: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise UsageError(f"config key '{key}' expects a boolean, got '{raw}'")


def _parse_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"config key '{key}' expects a number, got '{raw}'") from None


def parse_config_text(text: str) -> list:
    """Parse flat key=value config text into resolved ScenarioConfigs.

    Unknown keys, malformed values and unknown state names raise
    UsageError. A comma-separated m_over_p list expands into one config
    per grid point (a sweep).
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise UsageError(f"config line {lineno} is not key=value: '{stripped}'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key '{key}' on line {lineno}")
        raw[key] = value.strip()

    kwargs = {}
    m_values = [1.0]
    if "m_over_p" in raw:
        try:
            m_values = [float(tok) for tok in raw["m_over_p"].split(",")]
        except ValueError:
            raise UsageError(
                f"m_over_p expects one or more numbers, got '{raw['m_over_p']}'"
            ) from None
        if not m_values:
            raise UsageError("m_over_p must carry at least one value")
    for key in ("E_over_p", "kappa", "mu", "theta", "gamma_over_p",
                "t_max", "dt", "eps_dead", "eps_alive"):
        if key in raw:
            kwargs[key] = _parse_float(raw[key], key)
    if "initial_state" in raw:
        kwargs["initial_state"] = raw["initial_state"]
    if "custom_state" in raw:
        tokens = [tok.strip() for tok in raw["custom_state"].split(",")]
        if len(tokens) != 16:
            raise UsageError(f"custom_state expects 16 entries, got {len(tokens)}")
        try:
            kwargs["custom_state"] = tuple(complex(tok) for tok in tokens)
        except ValueError:
            raise UsageError("custom_state entries must parse as complex numbers") from None
    if "outputs" in raw:
        kwargs["outputs"] = raw["outputs"]
    if "emit_plots" in raw:
        kwargs["emit_plots"] = _parse_bool(raw["emit_plots"], "emit_plots")

    return [ScenarioConfig(m_over_p=m, **kwargs) for m in m_values]


def load_config(path) -> list:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"config file not found: {p}")
    return parse_config_text(p.read_text())


def run_scenario(configs: list) -> list:
    """Run one config or a sweep; returns (config, report, out_dir) triples.

    A single point writes straight into its outputs directory. A sweep
    writes one m_<value> subdirectory per grid point plus index.json at
    the root. Custom states are validated before any point runs.
    """
    if not configs:
        raise UsageError("nothing to run")
    for cfg in configs:
        if cfg.initial_state == "custom":
            initial_state("custom", cfg.custom_state)

    results = []
    if len(configs) == 1:
        cfg = configs[0]
        traj = run_trajectory(cfg)
        report = detect_features(traj, cfg.eps_dead, cfg.eps_alive)
        emit_outputs(traj, report, cfg)
        results.append((cfg, report, Path(cfg.outputs)))
        return results

    root = Path(configs[0].outputs)
    root.mkdir(parents=True, exist_ok=True)
    index = []
    for cfg in configs:
        sub = root / f"m_{cfg.m_over_p:g}"
        point_cfg = replace(cfg, outputs=str(sub))
        traj = run_trajectory(point_cfg)
        report = detect_features(traj, cfg.eps_dead, cfg.eps_alive)
        emit_outputs(traj, report, point_cfg)
        results.append((point_cfg, report, sub))
        index.append({
            "m_over_p": cfg.m_over_p,
            "trajectory": f"{sub.name}/trajectory.csv",
            "report": f"{sub.name}/report.json",
        })
    (root / "index.json").write_text(json.dumps({"points": index}, indent=2) + "\n")
    return results
