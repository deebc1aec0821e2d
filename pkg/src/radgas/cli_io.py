"""Scenario configuration, CSV emission, and the command-line front end.

Config files are strict JSON: unknown keys are rejected, every constraint
violation is collected (not just the first), and each message names the
offending path.  Numeric output is CSV with shortest round-trip decimal
formatting and `\n` newlines, so identical runs produce byte-identical
files.

Verbs:
    simulate <config>                 full run; time series + snapshots
    wave <config> --t T               smooth-wave profile snapshot at T
    riemann <config> --t T            exact-fan snapshot at T
    convexity-map <config> --a-list   Hessian/convexity scan over (v, theta, a)

Exit codes: 0 success, 1 usage, 2 validation, 3 numeric blow-up.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import thermo
from .numerics import ConvergenceError
from .solver import BlowUpError, Grid1D, PerturbationSpec, ScenarioError
from .thermo import GasParams, ThermoState
from .waves import NotARarefactionError, RiemannData, RiemannFan, SmoothWave

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "parse_config",
    "serialize_config",
    "write_snapshot_csv",
    "write_timeseries_csv",
    "read_snapshot_csv",
    "read_timeseries_csv",
    "main",
]

SNAPSHOT_HEADER = "x,v,u,theta,z,V,U,Theta"
TIMESERIES_HEADER = (
    "t,sup_v,sup_u,sup_s,sup_z,eta_total,dissipation,h1_perturbation,"
    "min_v,max_v,min_theta,max_theta,min_z,max_z,reactant_mass"
)
CONVEXITY_HEADER = "v,theta,a,det,p_vv,p_ss,convex"


class ConfigError(ValueError):
    """Invalid scenario document; ``errors`` lists every violation found."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid config:\n  " + "\n  ".join(self.errors))


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    label: str
    gas: GasParams
    rd: RiemannData
    entropy_tol: float
    grid: Grid1D
    t_end: float
    cfl: float
    output_interval: float
    snapshot_times: tuple[float, ...]
    perturbations: tuple[PerturbationSpec, ...]
    eps: float | None
    q: float
    seed: int


_GAS_KEYS = {
    "R": 1.0, "Cv": None, "a": 0.0, "mu": 1.0, "kappa1": 1.0, "kappa2": 1.0,
    "b": 3.0, "d": 1.0, "lambda_heat": 0.0, "K": 0.0, "A": 0.0, "beta": 0.0,
}
_RIEMANN_KEYS = {"v_minus", "u_minus", "theta_minus", "v_plus", "u_plus", "theta_plus", "entropy_tol"}
_GRID_KEYS = {"L", "n"}
_TIME_KEYS = {"t_end", "cfl", "output_interval", "snapshot_times"}
_WAVE_KEYS = {"eps", "q"}
_PERT_KEYS = {"field", "shape", "amplitude", "center", "width"}
_TOP_KEYS = {"label", "gas", "riemann", "grid", "time", "wave", "perturbation", "seed"}


def _num(block: dict, key: str, path: str, errors: list, default=None, required: bool = False):
    if key not in block:
        if required:
            errors.append(f"{path}.{key}: required")
        return default
    val = block[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        errors.append(f"{path}.{key}: expected a number, got {val!r}")
        return default
    return float(val)


def _check_unknown(block: dict, allowed, path: str, errors: list) -> None:
    for key in block:
        if key not in allowed:
            errors.append(f"{path}.{key}: unknown key")


def parse_config(text: str) -> ScenarioConfig:
    """Parse and fully validate a JSON scenario document."""
    errors: list[str] = []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"malformed JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ConfigError(["top level: expected a JSON object"])
    _check_unknown(doc, _TOP_KEYS, "config", errors)

    label = doc.get("label", "")
    if not isinstance(label, str):
        errors.append(f"label: expected a string, got {label!r}")
        label = ""
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        errors.append(f"seed: expected an integer, got {seed!r}")
        seed = 0

    gas_block = doc.get("gas", {})
    gp = None
    if not isinstance(gas_block, dict):
        errors.append("gas: expected an object")
    else:
        _check_unknown(gas_block, _GAS_KEYS, "gas", errors)
        kwargs = {}
        for key, default in _GAS_KEYS.items():
            val = _num(gas_block, key, "gas", errors, default=default)
            if val is not None:
                kwargs[key] = val
        try:
            gp = GasParams(**kwargs)
        except ValueError as exc:
            errors.append(f"gas: {exc}")

    grid = None
    grid_block = doc.get("grid")
    if not isinstance(grid_block, dict):
        errors.append("grid: required object with keys L, n")
    else:
        _check_unknown(grid_block, _GRID_KEYS, "grid", errors)
        L = _num(grid_block, "L", "grid", errors, required=True)
        n_raw = grid_block.get("n")
        if isinstance(n_raw, bool) or not isinstance(n_raw, int):
            errors.append(f"grid.n: expected an integer, got {n_raw!r}")
        elif L is not None:
            if L <= 0:
                errors.append(f"grid.L: must be positive, got {L}")
            else:
                try:
                    grid = Grid1D(-L, L, n_raw)
                except ValueError as exc:
                    errors.append(f"grid: {exc}")

    t_end = cfl = interval = None
    snapshot_times: tuple[float, ...] = ()
    time_block = doc.get("time")
    if not isinstance(time_block, dict):
        errors.append("time: required object with key t_end")
    else:
        _check_unknown(time_block, _TIME_KEYS, "time", errors)
        t_end = _num(time_block, "t_end", "time", errors, required=True)
        if t_end is not None and t_end < 0:
            errors.append(f"time.t_end: must be nonnegative, got {t_end}")
        cfl = _num(time_block, "cfl", "time", errors, default=0.4)
        if cfl is not None and not 0 < cfl <= 1:
            errors.append(f"time.cfl: must lie in (0, 1], got {cfl}")
        interval = _num(time_block, "output_interval", "time", errors, default=t_end or 0.0)
        if interval is not None and interval < 0:
            errors.append(f"time.output_interval: must be nonnegative, got {interval}")
        raw_times = time_block.get("snapshot_times", [])
        if not isinstance(raw_times, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw_times
        ):
            errors.append("time.snapshot_times: expected a list of numbers")
        else:
            snapshot_times = tuple(float(v) for v in raw_times)

    eps = None
    q = 2.0
    wave_block = doc.get("wave", {})
    if not isinstance(wave_block, dict):
        errors.append("wave: expected an object")
    else:
        _check_unknown(wave_block, _WAVE_KEYS, "wave", errors)
        eps = _num(wave_block, "eps", "wave", errors)
        if eps is not None and eps <= 0:
            errors.append(f"wave.eps: must be positive, got {eps}")
        q = _num(wave_block, "q", "wave", errors, default=2.0)
        if q is not None and q <= 1.5:
            errors.append(f"wave.q: must exceed 3/2, got {q}")

    perturbations: list[PerturbationSpec] = []
    pert_block = doc.get("perturbation", [])
    if not isinstance(pert_block, list):
        errors.append("perturbation: expected a list")
    else:
        for i, item in enumerate(pert_block):
            path = f"perturbation[{i}]"
            if not isinstance(item, dict):
                errors.append(f"{path}: expected an object")
                continue
            _check_unknown(item, _PERT_KEYS, path, errors)
            field = item.get("field")
            shape = item.get("shape")
            amp = _num(item, "amplitude", path, errors, required=True)
            center = _num(item, "center", path, errors, default=0.0)
            width = _num(item, "width", path, errors, required=True)
            if amp is None or width is None:
                continue
            try:
                perturbations.append(
                    PerturbationSpec(field=field, shape=shape, amplitude=amp, center=center, width=width)
                )
            except ValueError as exc:
                errors.append(f"{path}: {exc}")

    rd = None
    entropy_tol = 1e-8
    rb = doc.get("riemann")
    if not isinstance(rb, dict):
        errors.append("riemann: required object with the far-field states")
    else:
        _check_unknown(rb, _RIEMANN_KEYS, "riemann", errors)
        entropy_tol = _num(rb, "entropy_tol", "riemann", errors, default=1e-8)
        vals = {}
        for key in ("v_minus", "u_minus", "theta_minus", "v_plus", "u_plus"):
            vals[key] = _num(rb, key, "riemann", errors, required=True)
        vals["theta_plus"] = _num(rb, "theta_plus", "riemann", errors)
        for key in ("v_minus", "theta_minus", "v_plus"):
            if vals.get(key) is not None and vals[key] <= 0:
                errors.append(f"riemann.{key}: must be positive, got {vals[key]}")
        if vals.get("theta_plus") is not None and vals["theta_plus"] <= 0:
            errors.append(f"riemann.theta_plus: must be positive, got {vals['theta_plus']}")
        if gp is not None and not errors:
            if vals["theta_plus"] is None:
                # omitted: derive the right temperature from the shared entropy
                s_minus = thermo.entropy(gp, ThermoState(vals["v_minus"], vals["theta_minus"]))
                vals["theta_plus"] = float(
                    thermo.temperature_from_entropy(gp, thermo.EntropyState(vals["v_plus"], s_minus))
                )
            try:
                rd = RiemannData.from_far_fields(
                    gp,
                    vals["v_minus"], vals["u_minus"], vals["theta_minus"],
                    vals["v_plus"], vals["u_plus"], vals["theta_plus"],
                    entropy_tol=entropy_tol,
                )
            except (ValueError, NotARarefactionError) as exc:
                errors.append(f"riemann: {exc}")

    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(
        label=label,
        gas=gp,
        rd=rd,
        entropy_tol=entropy_tol,
        grid=grid,
        t_end=t_end,
        cfl=cfl,
        output_interval=interval,
        snapshot_times=snapshot_times,
        perturbations=tuple(perturbations),
        eps=eps,
        q=q,
        seed=seed,
    )


def serialize_config(config: ScenarioConfig) -> str:
    """Render a config back to canonical JSON (parse/serialize round-trips)."""
    doc = {
        "label": config.label,
        "gas": {
            "R": config.gas.R, "Cv": config.gas.Cv, "a": config.gas.a, "mu": config.gas.mu,
            "kappa1": config.gas.kappa1, "kappa2": config.gas.kappa2, "b": config.gas.b,
            "d": config.gas.d, "lambda_heat": config.gas.lambda_heat, "K": config.gas.K,
            "A": config.gas.A, "beta": config.gas.beta,
        },
        "riemann": {
            "v_minus": config.rd.v_minus, "u_minus": config.rd.u_minus,
            "theta_minus": config.rd.theta_minus, "v_plus": config.rd.v_plus,
            "u_plus": config.rd.u_plus, "theta_plus": config.rd.theta_plus,
            "entropy_tol": config.entropy_tol,
        },
        "grid": {"L": config.grid.x_right, "n": config.grid.n},
        "time": {
            "t_end": config.t_end, "cfl": config.cfl,
            "output_interval": config.output_interval,
            "snapshot_times": list(config.snapshot_times),
        },
        "perturbation": [
            {"field": p.field, "shape": p.shape, "amplitude": p.amplitude,
             "center": p.center, "width": p.width}
            for p in config.perturbations
        ],
        "seed": config.seed,
    }
    if config.eps is not None or config.q != 2.0:
        doc["wave"] = {}
        if config.eps is not None:
            doc["wave"]["eps"] = config.eps
        if config.q != 2.0:
            doc["wave"]["q"] = config.q
    return json.dumps(doc, indent=2, sort_keys=True)


def _fmt(value: float) -> str:
    return repr(float(value))


def write_snapshot_csv(snapshot, profile, path) -> None:
    """Snapshot plus profile overlay, one row per node."""
    x = profile.x
    n = len(x)
    if not (len(snapshot.v) == n):
        raise ValueError("snapshot and profile grids differ in length")
    lines = [SNAPSHOT_HEADER]
    for i in range(n):
        lines.append(
            ",".join(
                _fmt(val)
                for val in (
                    x[i], snapshot.v[i], snapshot.u[i], snapshot.theta[i], snapshot.z[i],
                    profile.V[i], profile.U[i], profile.Theta[i],
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_timeseries_csv(records, path) -> None:
    """One row per DiagnosticsRecord; t must be strictly increasing."""
    columns = TIMESERIES_HEADER.split(",")
    lines = [TIMESERIES_HEADER]
    prev_t = None
    for rec in records:
        if prev_t is not None and rec.t <= prev_t:
            raise RuntimeError(f"time series not strictly increasing: {rec.t} after {prev_t}")
        prev_t = rec.t
        lines.append(",".join(_fmt(getattr(rec, col)) for col in columns))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_snapshot_csv(path) -> dict[str, np.ndarray]:
    lines = Path(path).read_text(encoding="utf-8").strip("\n").split("\n")
    if lines[0] != SNAPSHOT_HEADER:
        raise ValueError(f"unexpected snapshot header {lines[0]!r}, expected {SNAPSHOT_HEADER!r}")
    cols = SNAPSHOT_HEADER.split(",")
    data = np.array([[float(tok) for tok in line.split(",")] for line in lines[1:]])
    data = data.reshape(-1, len(cols))
    return {name: data[:, i] for i, name in enumerate(cols)}


def read_timeseries_csv(path) -> dict[str, np.ndarray]:
    lines = Path(path).read_text(encoding="utf-8").strip("\n").split("\n")
    if lines[0] != TIMESERIES_HEADER:
        raise ValueError(f"unexpected time-series header {lines[0]!r}")
    cols = TIMESERIES_HEADER.split(",")
    data = np.array([[float(tok) for tok in line.split(",")] for line in lines[1:]])
    data = data.reshape(-1, len(cols))
    return {name: data[:, i] for i, name in enumerate(cols)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="radgas", description="1D viscous radiative reactive gas laboratory")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_sim = sub.add_parser("simulate", help="run a configured scenario")
    p_sim.add_argument("config")

    p_wave = sub.add_parser("wave", help="emit the smooth approximate wave at a time")
    p_wave.add_argument("config")
    p_wave.add_argument("--t", type=float, required=True)

    p_fan = sub.add_parser("riemann", help="emit the exact rarefaction fan at a time")
    p_fan.add_argument("config")
    p_fan.add_argument("--t", type=float, required=True)

    p_map = sub.add_parser("convexity-map", help="scan the Hessian of p_tilde over (v, theta, a)")
    p_map.add_argument("config")
    p_map.add_argument("--a-list", required=True, help="comma-separated radiation constants")
    p_map.add_argument("--v-range", default="0.2:5:40", help="LO:HI:COUNT for specific volume")
    p_map.add_argument("--theta-range", default="0.2:5:40", help="LO:HI:COUNT for temperature")
    return parser


def _load_config(path: str) -> ScenarioConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError([f"config file not found: {path}"])
    return parse_config(p.read_text(encoding="utf-8"))


def _parse_range(text: str, name: str) -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        if not (lo > 0 and hi > lo and count >= 2):
            raise ValueError
    except ValueError:
        raise ConfigError([f"{name}: expected LO:HI:COUNT with 0 < LO < HI, COUNT >= 2, got {text!r}"]) from None
    return np.linspace(lo, hi, count)


def _cmd_simulate(args) -> int:
    from . import solver

    config = _load_config(args.config)
    solver.run(config, out_dir=args.out, quiet=args.quiet)
    if not args.quiet:
        print(f"wrote {Path(args.out) / 'timeseries.csv'}")
    return 0


def _cmd_wave(args) -> int:
    config = _load_config(args.config)
    if args.t < 0:
        raise ConfigError(["--t: must be nonnegative for the wave profile"])
    x = config.grid.x()
    wave = SmoothWave(config.gas, config.rd, eps=config.eps, q=config.q)
    prof = wave.sample(args.t, x, farfield_tol=None)
    snap = _ProfileAsSnapshot(args.t, prof.V, prof.U, prof.Theta)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"wave_t{args.t:g}.csv"
    write_snapshot_csv(snap, prof, path)
    if not args.quiet:
        print(f"wrote {path}")
    return 0


def _cmd_riemann(args) -> int:
    from .waves import WaveProfile

    config = _load_config(args.config)
    x = config.grid.x()
    fan = RiemannFan(config.gas, config.rd)
    if args.t > 0:
        xi = x / args.t
    else:
        big = 1e300
        xi = np.where(x < 0, -big, np.where(x > 0, big, 0.0))
    V, U, Theta = fan.eval(xi)
    prof = WaveProfile(
        t=max(args.t, 0.0), x=x, V=V, U=U, Theta=Theta,
        v_m=fan.v_m, u_m=fan.u_m, theta_m=fan.theta_m,
    )
    snap = _ProfileAsSnapshot(max(args.t, 0.0), V, U, Theta)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"riemann_t{args.t:g}.csv"
    write_snapshot_csv(snap, prof, path)
    if not args.quiet:
        print(f"wrote {path}")
    return 0


class _ProfileAsSnapshot:
    """Adapter so wave/fan profiles reuse the snapshot CSV writer."""

    def __init__(self, t, V, U, Theta):
        self.t = t
        self.v = np.asarray(V)
        self.u = np.asarray(U)
        self.theta = np.asarray(Theta)
        self.z = np.zeros_like(self.v)


def _cmd_convexity_map(args) -> int:
    from dataclasses import replace

    config = _load_config(args.config)
    try:
        a_values = [float(tok) for tok in args.a_list.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigError([f"--a-list: expected comma-separated numbers, got {args.a_list!r}"]) from None
    if not a_values or any(a < 0 for a in a_values):
        raise ConfigError(["--a-list: need at least one nonnegative radiation constant"])
    v_grid = _parse_range(args.v_range, "--v-range")
    th_grid = _parse_range(args.theta_range, "--theta-range")

    lines = [CONVEXITY_HEADER]
    vv, tt = np.meshgrid(v_grid, th_grid, indexing="ij")
    for a in a_values:
        rep = thermo.hessian_vt(replace(config.gas, a=a), ThermoState(vv, tt))
        for i in range(vv.shape[0]):
            for j in range(vv.shape[1]):
                lines.append(
                    ",".join(
                        (
                            _fmt(vv[i, j]), _fmt(tt[i, j]), _fmt(a),
                            _fmt(rep.det[i, j]), _fmt(rep.p_vv[i, j]), _fmt(rep.p_ss[i, j]),
                            "true" if rep.convex[i, j] else "false",
                        )
                    )
                )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "convexity_map.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if not args.quiet:
        print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.verb == "simulate":
            return _cmd_simulate(args)
        if args.verb == "wave":
            return _cmd_wave(args)
        if args.verb == "riemann":
            return _cmd_riemann(args)
        if args.verb == "convexity-map":
            return _cmd_convexity_map(args)
        raise _UsageError(f"unknown verb {args.verb!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ScenarioError, NotARarefactionError) as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return 2
    except (BlowUpError, ConvergenceError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
