"""Experiment configuration, CSV traces, parameter sweeps and oracle verification."""

from __future__ import annotations

import concurrent.futures
import csv
import io
import itertools
import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import bounds, dynamics, oracle
from .errors import ConfigurationError, DomainError
from .gates import coupling
from .qcore import bloch_distance, bloch_vector

NAMED_STATES = {
    "zero": (0.0, 0.0, 1.0),
    "one": (0.0, 0.0, -1.0),
    "plus": (1.0, 0.0, 0.0),
    "minus": (-1.0, 0.0, 0.0),
    "mixed": (0.0, 0.0, 0.0),
}
METRICS = ("fidelity", "bloch_distance", "entropy")
SWEEP_AXES = ("eta", "N", "n", "delta", "d")
DEFAULT_MAX_ROWS = 100_000

TRACE_COLUMNS = ["step", "protocol", "eta", "sys_x", "sys_y", "sys_z",
                 "res_x", "res_y", "res_z", "fidelity", "bloch_distance"]

_ANGLE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``0.39``, ``pi/8``, ``3pi/8`` or ``3*pi/8``."""
    text = str(text).strip()
    m = _ANGLE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) not in ("", "+") else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse angle {text!r}") from exc


def parse_state(text) -> np.ndarray:
    """A named state (``zero``, ``one``, ``plus``, ``minus``, ``mixed``) or ``x,y,z``."""
    if not isinstance(text, str):
        return bloch_vector(text)
    key = text.strip().lower()
    if key in NAMED_STATES:
        return np.array(NAMED_STATES[key])
    parts = [p for p in re.split(r"[,\s]+", key.strip("()[]")) if p]
    try:
        return bloch_vector([float(p) for p in parts])
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse state {text!r}") from exc


def fmt(x: Any) -> str:
    """Shortest round-trip text for floats; ``-0.0`` prints as ``0.0``."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x) + 0.0)
    if x is None:
        return ""
    return str(x)


@dataclass
class ExperimentConfig:
    protocol: str = "cswap"
    eta: float = math.pi / 4
    N: int = 20
    n: int = 1
    system0: np.ndarray = field(default_factory=lambda: np.array(NAMED_STATES["zero"]))
    reservoir0: np.ndarray = field(default_factory=lambda: np.array(NAMED_STATES["plus"]))
    metrics: tuple[str, ...] = ("fidelity", "bloch_distance")
    seed: int = 0
    delta: float = 0.1
    output_path: Optional[str] = None

    def validate(self) -> "ExperimentConfig":
        self.protocol = dynamics.check_protocol(self.protocol)
        try:
            coupling(self.eta)
        except DomainError as exc:
            raise ConfigurationError(str(exc)) from exc
        self.system0 = bloch_vector(self.system0)
        self.reservoir0 = bloch_vector(self.reservoir0)
        if self.N < 0:
            raise ConfigurationError(f"N must be >= 0, got {self.N}")
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if self.protocol == "cswap" and self.n > 1 and self.N < self.n:
            raise ConfigurationError(f"cswap reuse needs N >= n, got N={self.N}, n={self.n}")
        unknown = set(self.metrics) - set(METRICS)
        if unknown:
            raise ConfigurationError(f"unknown metrics {sorted(unknown)}")
        if "entropy" in self.metrics and self.n != 1:
            raise ConfigurationError("entropy is only available for a single system (n = 1)")
        return self

    @property
    def d(self) -> float:
        return bloch_distance(self.system0, self.reservoir0)


_CONFIG_KEYS = {
    "protocol": ("protocol", str),
    "eta": ("eta", parse_angle),
    "n_reservoir": ("N", int),
    "N": ("N", int),
    "n": ("n", int),
    "systems": ("n", int),
    "system": ("system0", parse_state),
    "system0": ("system0", parse_state),
    "reservoir": ("reservoir0", parse_state),
    "reservoir0": ("reservoir0", parse_state),
    "metrics": ("metrics", lambda v: tuple(m.strip() for m in v.split(",") if m.strip())),
    "seed": ("seed", int),
    "delta": ("delta", float),
    "output": ("output_path", str),
    "output_path": ("output_path", str),
}


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        name, conv = _CONFIG_KEYS[key]
        try:
            values[name] = conv(value)
        except (ValueError, DomainError) as exc:
            raise ConfigurationError(f"{path}:{lineno}: {exc}") from exc
    return values


def build_config(file_values: Optional[dict] = None, **overrides) -> ExperimentConfig:
    """File values first, then non-``None`` overrides (command-line flags)."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**merged).validate()


# --- simulate -----------------------------------------------------------------


def run_traces(config: ExperimentConfig) -> list[dynamics.HomogenizationTrace]:
    config.validate()
    if config.n == 1:
        trace = dynamics.homogenize_single_pass(
            config.system0, config.reservoir0, config.N, config.eta, config.protocol)
        if "entropy" in config.metrics:
            trace.entropy = oracle.joint_entropy_series(
                config.system0, config.reservoir0, config.N, config.eta, config.protocol)
        return [trace]
    systems = [config.system0] * config.n
    return dynamics.homogenize_repeated(
        systems, config.reservoir0, config.N, config.eta, config.protocol)


def trace_columns(config: ExperimentConfig, with_system: Optional[bool] = None) -> list[str]:
    cols = list(TRACE_COLUMNS)
    if config.n > 1 if with_system is None else with_system:
        cols.insert(1, "system")
    if "entropy" in config.metrics:
        cols.append("entropy")
    return cols


def trace_rows(config: ExperimentConfig, traces: Sequence[dynamics.HomogenizationTrace],
               with_system: Optional[bool] = None, first_index: int = 1) -> list[list[Any]]:
    if with_system is None:
        with_system = config.n > 1
    rows = []
    for i, trace in enumerate(traces, first_index):
        fid = trace.fidelity
        dist = trace.distance
        for k in range(trace.steps + 1):
            row: list[Any] = [k, config.protocol, float(config.eta),
                              *trace.systems[k], *trace.reservoirs[k], fid[k], dist[k]]
            if with_system:
                row.insert(1, i)
            if trace.entropy is not None:
                row.append(trace.entropy[k])
            rows.append(row)
    return rows


def write_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]], out=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def simulate_csv(config: ExperimentConfig) -> str:
    traces = run_traces(config)
    return write_csv(trace_columns(config), trace_rows(config, traces))


# --- sweep --------------------------------------------------------------------


def parse_axis(spec: str) -> tuple[str, list[float]]:
    """``name=start:stop:step`` (inclusive) or ``name=v1,v2,...``."""
    if "=" not in spec:
        raise ConfigurationError(f"axis {spec!r} must look like name=values")
    name, values = (p.strip() for p in spec.split("=", 1))
    if name not in SWEEP_AXES:
        raise ConfigurationError(f"cannot sweep {name!r}; choose from {SWEEP_AXES}")
    conv = int if name in ("N", "n") else parse_angle if name == "eta" else float
    if ":" in values:
        parts = values.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"range {values!r} must be start:stop:step")
        start, stop, step = (parse_angle(p) if name == "eta" else float(p) for p in parts)
        if step <= 0:
            raise ConfigurationError(f"range step must be positive in {spec!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise ConfigurationError(f"empty range {spec!r}")
        grid = [start + i * step for i in range(count)]
        out = [int(round(v)) for v in grid] if conv is int else grid
    else:
        out = [conv(v) for v in values.split(",") if v.strip()]
    if not out:
        raise ConfigurationError(f"axis {spec!r} has no values")
    return name, out


SWEEP_EXTRA = ["res1_distance", "n_min_single", "n_max", "n_min_reuse", "reuse_feasible"]


def _sweep_has_system(config: ExperimentConfig, names: Sequence[str]) -> bool:
    return config.n > 1 or "n" in names


def sweep_columns(config: ExperimentConfig, axes: Sequence[tuple[str, list]]) -> list[str]:
    base = trace_columns(config, _sweep_has_system(config, [name for name, _ in axes]))
    return [f"axis_{name}" for name, _ in axes] + base + SWEEP_EXTRA


def _sweep_point(args) -> list[Any]:
    config, names, values = args
    point = dict(zip(names, values))
    cfg = replace(config, **{k: point[k] for k in ("eta", "N", "n") if k in point})
    cfg.validate()
    traces = run_traces(cfg)
    final = trace_rows(cfg, traces[-1:], _sweep_has_system(config, names), cfg.n)[-1]
    target = cfg.reservoir0
    res1 = (bloch_distance(traces[-1].reservoir_final[0], target)
            if cfg.N > 0 else 0.0)

    delta = point.get("delta", cfg.delta)
    d = point.get("d", cfg.d)
    single = n_max = reuse = None
    feasible = None
    if d > 0:
        single = bounds.min_reservoir_single(delta, d).n_min
        rc = bounds.max_reuse_count(delta, d, cfg.eta)
        n_max = math.inf if rc.unbounded else rc.n_max
        rr = bounds.min_reservoir_reuse(delta, d, cfg.eta, cfg.n)
        reuse, feasible = rr.n_min, rr.feasible
    return list(values) + final + [res1, single, n_max, reuse, feasible]


def sweep_rows(config: ExperimentConfig, axes: Sequence[tuple[str, list]],
               max_rows: int = DEFAULT_MAX_ROWS, jobs: int = 1) -> list[list[Any]]:
    """Evaluate the grid in lexicographic axis order; output order is fixed."""
    config.validate()
    names = [name for name, _ in axes]
    if len(set(names)) != len(names):
        raise ConfigurationError(f"repeated sweep axis in {names}")
    size = math.prod(len(v) for _, v in axes) if axes else 1
    if size > max_rows:
        raise ConfigurationError(f"sweep grid has {size} points, cap is {max_rows}")
    points = [(config, names, combo) for combo in itertools.product(*(v for _, v in axes))]
    if jobs > 1 and len(points) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_point, points, chunksize=max(1, len(points) // (4 * jobs))))
    return [_sweep_point(p) for p in points]


def sweep_csv(config: ExperimentConfig, axes: Sequence[tuple[str, list]],
              max_rows: int = DEFAULT_MAX_ROWS, jobs: int = 1) -> str:
    return write_csv(sweep_columns(config, axes), sweep_rows(config, axes, max_rows, jobs))


# --- verify -------------------------------------------------------------------


@dataclass
class Check:
    name: str
    value: float
    tol: Optional[float] = None
    passed: bool = True
    info: bool = False
    note: str = ""

    def line(self) -> str:
        if self.info:
            status = "INFO"
        else:
            status = "PASS" if self.passed else "FAIL"
        tol = f" (tol {self.tol:.1e})" if self.tol is not None else ""
        note = f"  {self.note}" if self.note else ""
        return f"[{status}] {self.name}: {self.value:.6g}{tol}{note}"


def _dev_check(name: str, dev: float, tol: float, note: str = "") -> Check:
    return Check(name, float(dev), tol, bool(dev <= tol), note=note)


def random_bloch(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v if pure else v * rng.uniform() ** (1 / 3)


def verify_maps(seed: int = 0, samples: int = 50) -> list[Check]:
    rng = np.random.default_rng(seed)
    kappa = dynamics.pswap_cross_coefficient()
    checks = [Check("pswap cross-term coefficient from oracle", kappa, info=True,
                    note="tabulated value 0.25")]
    dev = {"cswap": 0.0, "pswap": 0.0, "control": 0.0}
    for _ in range(samples):
        b, a = random_bloch(rng), random_bloch(rng)
        eta = rng.uniform(0, np.pi / 2)
        st = oracle.oracle_interaction(b, a, eta, "cswap")
        res = dynamics.cswap_step(b, a, eta)
        dev["cswap"] = max(dev["cswap"],
                           np.abs(st.bloch("s") - res.system).max(),
                           np.abs(st.bloch("r") - res.reservoir).max())
        dev["control"] = max(dev["control"], np.abs(st.bloch("c") - res.control).max())
        st = oracle.oracle_interaction(b, a, eta, "pswap")
        res = dynamics.pswap_step(b, a, eta)
        dev["pswap"] = max(dev["pswap"],
                           np.abs(st.bloch("s") - res.system).max(),
                           np.abs(st.bloch("r") - res.reservoir).max())
    checks.append(_dev_check("cswap step vs oracle", dev["cswap"], 1e-12))
    checks.append(_dev_check("cswap control vs oracle", dev["control"], 1e-12))
    checks.append(_dev_check("pswap step vs oracle", dev["pswap"], 1e-12))

    worst = {"cswap": 0.0, "pswap": 0.0}
    for i in range(10):
        b, a = random_bloch(rng), random_bloch(rng)
        eta = rng.uniform(0, np.pi / 2)
        N = 1 + i % 6
        for protocol in worst:
            red = dynamics.homogenize_single_pass(b, a, N, eta, protocol)
            _, ora = oracle.oracle_single_pass(b, a, N, eta, protocol)
            worst[protocol] = max(worst[protocol],
                                  np.abs(red.systems - ora.systems).max(),
                                  np.abs(red.reservoirs - ora.reservoirs).max())
    for protocol, value in worst.items():
        checks.append(_dev_check(f"{protocol} single pass vs oracle (N<=6)", value, 1e-12))

    b, a, eta = random_bloch(rng), random_bloch(rng), rng.uniform(0.1, 1.4)
    red = dynamics.homogenize_repeated([b, b], a, 3, eta, "cswap")
    _, ora = oracle.oracle_repeated([b, b], a, 3, eta, "cswap", trace_controls=False)
    r1 = np.abs(red[-1].reservoir_final[0] - ora[-1].reservoir_final[0]).max()
    checks.append(_dev_check("cswap reuse N=3 n=2 reservoir qubit 1 vs oracle", r1, 1e-10))
    rest = max(np.abs(x.systems - y.systems).max() for x, y in zip(red, ora))
    rest = max(rest, np.abs(red[-1].reservoir_final - ora[-1].reservoir_final).max())
    checks.append(Check("cswap reuse N=3 n=2, persistent controls: max marginal gap",
                        rest, info=True, note="correlations carried by reused controls"))
    red = dynamics.homogenize_repeated([b, b], a, 3, eta, "pswap")
    _, ora = oracle.oracle_repeated([b, b], a, 3, eta, "pswap")
    gap = max(np.abs(x.systems - y.systems).max() for x, y in zip(red, ora))
    checks.append(Check("pswap reuse N=3 n=2: mean-field gap", gap, info=True,
                        note="reservoir-reservoir correlations"))

    b, a, eta = random_bloch(rng), random_bloch(rng), rng.uniform(0, np.pi / 2)
    tab, gen = bounds.printed_fidelity_dot_term(b, a, eta)
    checks.append(Check("fidelity dot term, tabulated minus general form", tab - gen,
                        info=True, note="differs unless the reservoir state is pure"))
    return checks


def verify_joint(seed: int = 0, samples: int = 20) -> list[Check]:
    rng = np.random.default_rng(seed)
    t1 = t2 = printed = 0.0
    for _ in range(samples):
        b, a = random_bloch(rng), random_bloch(rng)
        eta = rng.uniform(0, np.pi / 2)
        cs = oracle.oracle_interaction(b, a, eta, "cswap").marginal(["s", "r"])
        t1 = max(t1, np.abs(cs - dynamics.cswap_joint_state(b, a, eta)).max())
        ps = oracle.oracle_interaction(b, a, eta, "pswap").matrix
        t2 = max(t2, np.abs(ps - dynamics.pswap_joint_state(b, a, eta)).max())
        printed = max(printed, np.abs(ps - dynamics.pswap_joint_state_printed(b, a, eta)).max())
    checks = [
        _dev_check("cswap joint state vs oracle", t1, 1e-12),
        _dev_check("pswap joint state (oracle coefficient) vs oracle", t2, 1e-12),
        Check("pswap joint state as tabulated (-cs/8 terms) vs oracle", printed, info=True),
    ]
    channel = 0.0
    for N in range(1, 5):
        b, a = random_bloch(rng), random_bloch(rng)
        eta = rng.uniform(0, np.pi / 2)
        traced, _ = oracle.oracle_single_pass(b, a, N, eta, "cswap", trace_controls=True)
        kept, _ = oracle.oracle_single_pass(b, a, N, eta, "cswap", trace_controls=False)
        sr = ["s", *[f"r{j + 1}" for j in range(N)]]
        channel = max(channel, np.abs(traced.matrix - kept.marginal(sr)).max())
    checks.append(_dev_check("cswap immediate vs deferred control trace-out (N<=4)",
                             channel, 1e-12))
    return checks


def plateau_step(series: Sequence[float], tol: float = 1e-3) -> Optional[int]:
    """First step after which every step-to-step change stays below ``tol``."""
    diffs = np.abs(np.diff(series))
    for k in range(len(diffs)):
        if np.all(diffs[k:] < tol):
            return k + 1
    return None


def verify_entropy(seed: int = 0, samples: int = 10, N: int = 6) -> list[Check]:
    rng = np.random.default_rng(seed)
    spread = 0.0
    drop = 0.0
    for _ in range(samples):
        b, a = random_bloch(rng), random_bloch(rng)
        eta = rng.uniform(0, np.pi / 2)
        s = oracle.joint_entropy_series(b, a, N, eta, "pswap")
        spread = max(spread, max(s) - min(s))
        s = oracle.joint_entropy_series(b, a, N, eta, "cswap")
        drop = max(drop, max(0.0, -float(np.min(np.diff(s)))))
    checks = [
        _dev_check("pswap joint entropy spread", spread, 1e-10),
        _dev_check("cswap joint entropy largest decrease", drop, 1e-10),
    ]
    zero, plus = NAMED_STATES["zero"], NAMED_STATES["plus"]
    weak = oracle.joint_entropy_series(zero, plus, N, math.pi / 8, "cswap")
    strong = oracle.joint_entropy_series(zero, plus, N, 3 * math.pi / 8, "cswap")
    ps_weak, ps_strong = plateau_step(weak), plateau_step(strong)
    earlier = ps_strong is not None and (ps_weak is None or ps_strong < ps_weak)
    lower = strong[-1] < weak[-1]
    checks.append(Check("cswap plateau: strong coupling earlier and lower",
                        strong[-1] - weak[-1], passed=earlier and lower,
                        note=f"plateau steps {ps_strong} vs {ps_weak}; "
                             f"final {strong[-1]:.4f} vs {weak[-1]:.4f} bits"))
    return checks


def simulate_reuse(Delta: float, eta: float, n: int, N: int,
                   system0=NAMED_STATES["zero"], reservoir0=NAMED_STATES["one"]
                   ) -> tuple[float, float]:
    """Worst system and worst reservoir distance from the target after ``n`` passes."""
    traces = dynamics.homogenize_repeated([system0] * n, reservoir0, N, eta, "cswap")
    target = np.asarray(reservoir0, dtype=float)
    worst_sys = max(bloch_distance(t.final_system, target) for t in traces)
    worst_res = max((bloch_distance(r, target) for r in traces[-1].reservoir_final),
                    default=0.0)
    return worst_sys, worst_res


def verify_bounds() -> list[Check]:
    checks = []
    zero = np.array(NAMED_STATES["zero"])
    bad = 0
    total = 0
    for d in (0.5, 1.0, 1.5, 2.0):
        for delta in (0.05, 0.1, 0.2, 0.3):
            rep = bounds.min_reservoir_single(delta, d)
            eta = math.asin(math.sqrt(rep.s_squared_limit))
            reservoir = zero - np.array([0.0, 0.0, d])
            tr = dynamics.homogenize_single_pass(zero, reservoir, rep.n_min, eta, "cswap")
            ok_sys = tr.distance[-1] <= delta + 1e-12
            ok_res = max(bloch_distance(r, reservoir) for r in tr.reservoir_final) <= delta + 1e-12
            tight = rep.n_min == 0 or tr.distance[-2] > delta
            total += 1
            bad += not (ok_sys and ok_res and tight)
    checks.append(Check("single-use bound: conditions met at N_min, system fails at N_min-1",
                        bad, 0, bad == 0, note=f"{total} grid points"))

    bad = total = 0
    for Delta in (0.1, 0.2, 0.3, 0.4):
        for n in (1, 2, 3, 4):
            eta = bounds.design_coupling(Delta, 2.0, n)
            rep = bounds.min_reservoir_reuse(Delta, 2.0, eta, n)
            sys_d, res_d = simulate_reuse(Delta, eta, n, max(rep.n_min, n))
            total += 1
            bad += not (rep.feasible and sys_d <= Delta + 1e-12 and res_d <= Delta + 1e-12)
    checks.append(Check("reuse bound at its design coupling", bad, 0, bad == 0,
                        note=f"{total} (Delta, n) points"))

    bad = total = 0
    for eta in (0.05, 0.1, 0.15, 0.2):
        for Delta in (0.1, 0.2, 0.3, 0.4):
            for n in (1, 2, 3, 4):
                rep = bounds.min_reservoir_reuse(Delta, 2.0, eta, n)
                if not rep.feasible:
                    continue
                sys_d, res_d = simulate_reuse(Delta, eta, n, max(rep.n_min, n))
                total += 1
                bad += not (sys_d <= Delta + 1e-12 and res_d <= Delta + 1e-12)
    checks.append(Check("reuse bound at free couplings: violating feasible points", bad,
                        info=True, note=f"of {total} feasible; N_min assumes the design coupling"))

    xs, ys = bounds.scan(bounds.fidelity_gap_bound, 0.0, 1.0, 0.001)
    i = int(np.argmax(ys))
    ok = 0.0203 <= ys[i] <= 0.0213 and 0.79 <= xs[i] <= 0.82
    checks.append(Check("tabulated fidelity-gap bound maximum", float(ys[i]), passed=ok,
                        note=f"at alpha={xs[i]:.3f}"))
    xs, ys = bounds.scan(bounds.measured_fidelity_gap, 0.0, 1.0, 0.001)
    i = int(np.argmax(ys))
    checks.append(Check("measured fidelity gap maximum (beta=1, eta=pi/4)", float(ys[i]),
                        info=True, note=f"at alpha={xs[i]:.3f}; exceeds the tabulated bound"
                        if ys[i] > 0.0213 else f"at alpha={xs[i]:.3f}"))
    return checks


VERIFY_SCOPES = {
    "maps": verify_maps,
    "joint": verify_joint,
    "entropy": verify_entropy,
    "bounds": verify_bounds,
}


def run_verify(scopes: Sequence[str], seed: int = 0) -> list[tuple[str, Check]]:
    out = []
    for scope in scopes:
        if scope not in VERIFY_SCOPES:
            raise ConfigurationError(f"unknown verify scope {scope!r}")
        fn = VERIFY_SCOPES[scope]
        checks = fn() if scope == "bounds" else fn(seed)
        out.extend((scope, c) for c in checks)
    return out

