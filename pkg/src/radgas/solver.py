"""Explicit finite-difference integrator for the full viscous system.

Unknowns on a uniform node grid in the Lagrangian mass coordinate:
specific volume v, velocity u, temperature theta, reactant fraction z.
The semi-discretization uses the temperature form of the energy balance
(convenient for positivity monitoring, and it avoids differencing the
total energy e + u^2/2):

    v_t     = D0 u
    u_t     = -D0 p + D-( mu * D+u / v_face )
    theta_t = [ -theta*p_theta*D0 u + D-( kappa_face * D+theta / v_face )
                + mu*(D0 u)^2 / v + lambda*phi(theta)*z ] / e_theta
    z_t     = D-( d * D+z / v_face^2 ) - phi(theta)*z

D0/D+/D- are central/forward/backward first differences; face values are
arithmetic means of the adjacent nodes, which preserves the discrete
summation-by-parts structure behind the reactant-mass balance.  Time
stepping is two-stage Heun under an adaptive advective/diffusive step
restriction.  The domain is a truncation of the real line: the two edge
nodes are held at the time-dependent smooth-wave values (V, U, Theta, 0),
which equal the far fields up to the wave's spatial tails, so a domain
comfortably wider than the fan keeps the boundary pollution negligible.

Blow-up (NaN or loss of positivity) raises instead of clamping: the point
of the tool is to detect leaving the admissible regime, not to paper over
it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import diagnostics, thermo
from .thermo import GasParams, ThermoState
from .waves import RiemannData, RiemannFan, SmoothWave

__all__ = [
    "Grid1D",
    "FieldSnapshot",
    "PerturbationSpec",
    "SimulationState",
    "ScenarioError",
    "BlowUpError",
    "initialize",
    "stable_dt",
    "step",
    "run",
]

_EDGE_DECAY_LIMIT = 1e-8


class ScenarioError(ValueError):
    """Initial data leaves the physically admissible region."""


class BlowUpError(RuntimeError):
    """The discrete solution left the physical region mid-run."""

    def __init__(self, t: float, cell: int, what: str):
        self.t = t
        self.cell = cell
        self.what = what
        super().__init__(f"blow-up at t={t:.6g}, cell {cell}: {what}")


@dataclass(frozen=True)
class Grid1D:
    """Uniform node grid on [x_left, x_right] with n nodes inclusive."""

    x_left: float
    x_right: float
    n: int

    def __post_init__(self):
        if self.n < 16:
            raise ValueError(f"need at least 16 nodes, got {self.n}")
        if not self.x_left < self.x_right:
            raise ValueError(f"need x_left < x_right, got [{self.x_left}, {self.x_right}]")

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / (self.n - 1)

    def x(self) -> np.ndarray:
        return np.linspace(self.x_left, self.x_right, self.n)


@dataclass
class FieldSnapshot:
    """The evolving fields at one time instant.

    v and theta must be positive everywhere (constructor-enforced); the
    reactant bound 0 <= z <= 1 is monitored by the diagnostics rather than
    enforced, so that bound violations surface instead of being clamped.
    """

    t: float
    v: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        n = len(self.v)
        if not (len(self.u) == len(self.theta) == len(self.z) == n):
            raise ValueError("field arrays must share one length")
        if not np.all(np.isfinite(self.v)) or np.any(self.v <= 0.0):
            raise ValueError("specific volume must be positive and finite everywhere")
        if not np.all(np.isfinite(self.theta)) or np.any(self.theta <= 0.0):
            raise ValueError("temperature must be positive and finite everywhere")


@dataclass(frozen=True)
class PerturbationSpec:
    """A localized bump added to one initial field.

    ``gaussian``: amplitude * exp(-((x - center)/width)^2 / 2)
    ``bump``: compactly supported mollifier
              amplitude * exp(1 - 1/(1 - r^2)) on r = |x - center|/width < 1
    """

    field: str
    shape: str
    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        if self.field not in ("v", "u", "theta", "z"):
            raise ValueError(f"field must be one of v/u/theta/z, got {self.field!r}")
        if self.shape not in ("gaussian", "bump"):
            raise ValueError(f"shape must be gaussian or bump, got {self.shape!r}")
        if not self.width > 0.0:
            raise ValueError(f"width must be positive, got {self.width}")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = (x - self.center) / self.width
        if self.shape == "gaussian":
            return self.amplitude * np.exp(-0.5 * r * r)
        out = np.zeros_like(r)
        inside = np.abs(r) < 1.0
        with np.errstate(all="ignore"):
            out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - r[inside] ** 2))
        return out


@dataclass
class SimulationState:
    """One owner per state; step kernels mutate ``snapshot`` in place."""

    gp: GasParams
    rd: RiemannData
    grid: Grid1D
    wave: SmoothWave
    fan: RiemannFan
    snapshot: FieldSnapshot
    step_count: int = 0
    records: list = field(default_factory=list)
    _boundary_cache: dict = field(default_factory=dict)

    def boundary_values(self, t: float):
        """Smooth-wave (V, U, Theta) at the two edge nodes, cached by time.

        Consecutive Heun stages and steps reuse the same instants, so a
        tiny cache removes nearly all redundant profile evaluations.
        """
        hit = self._boundary_cache.get(t)
        if hit is None:
            edges = np.array([self.grid.x_left, self.grid.x_right])
            hit = self.wave.eval(t, edges)
            if len(self._boundary_cache) > 8:
                self._boundary_cache.clear()
            self._boundary_cache[t] = hit
        return hit


def initialize(
    gp: GasParams,
    rd: RiemannData,
    grid: Grid1D,
    perturbations: tuple[PerturbationSpec, ...] = (),
    eps: float | None = None,
    q: float = 2.0,
    farfield_tol: float | None = 1e-3,
) -> SimulationState:
    """Initial data: smooth wave at t = 0 plus decaying perturbations.

    Every perturbation must vanish at the domain edges (|value| < 1e-8),
    the perturbed v and theta must stay positive, and the initial reactant
    fraction must lie in [0, 1]; violations raise ScenarioError.
    """
    x = grid.x()
    wave = SmoothWave(gp, rd, eps=eps, q=q)
    prof = wave.sample(0.0, x, farfield_tol=farfield_tol)

    bumps = {"v": np.zeros_like(x), "u": np.zeros_like(x), "theta": np.zeros_like(x), "z": np.zeros_like(x)}
    for pert in perturbations:
        vals = pert(x)
        edge = max(abs(vals[0]), abs(vals[-1]))
        if edge >= _EDGE_DECAY_LIMIT:
            raise ScenarioError(
                f"perturbation on {pert.field!r} does not decay at the domain edges ({edge:.3e} >= 1e-8)"
            )
        bumps[pert.field] = bumps[pert.field] + vals

    v = prof.V + bumps["v"]
    u = prof.U + bumps["u"]
    theta = prof.Theta + bumps["theta"]
    z = bumps["z"]
    if np.any(v <= 0.0):
        raise ScenarioError("perturbed initial specific volume is nonpositive somewhere")
    if np.any(theta <= 0.0):
        raise ScenarioError("perturbed initial temperature is nonpositive somewhere")
    if np.any(z < 0.0) or np.any(z > 1.0):
        raise ScenarioError("initial reactant fraction must lie in [0, 1]")

    snap = FieldSnapshot(t=0.0, v=v, u=u, theta=theta, z=z)
    return SimulationState(gp=gp, rd=rd, grid=grid, wave=wave, fan=RiemannFan(gp, rd), snapshot=snap)


def stable_dt(state: SimulationState, cfl: float = 1.0) -> float:
    """Largest safe explicit step times the safety factor ``cfl``.

    Minimum over nodes of the advective limit dx/(|u| + c) with the local
    sound speed c = sqrt(-v^2 * dp_tilde/dv), and the three diffusive
    limits dx^2*v*e_theta/(2*kappa), dx^2*v/(2*mu), dx^2*v^2/(2*d).
    """
    gp = state.gp
    s = state.snapshot
    dx = state.grid.dx
    st = ThermoState(s.v, s.theta)
    c = s.v * np.sqrt(-thermo.p_tilde_v_vt(gp, st))
    e_th = thermo.energy_theta(gp, st)
    kappa = thermo.conductivity(gp, st)
    cand = np.minimum(dx / (np.abs(s.u) + c), dx * dx * s.v * e_th / (2.0 * kappa))
    cand = np.minimum(cand, dx * dx * s.v / (2.0 * gp.mu))
    cand = np.minimum(cand, dx * dx * s.v**2 / (2.0 * gp.d))
    return cfl * float(cand.min())


def _rhs(gp: GasParams, dx: float, v, u, theta, z):
    """Interior tendencies (length n-2) of the semi-discretization.

    Works on raw arrays with all floating errors suppressed: an unstable
    intermediate stage produces NaNs that the post-step check converts
    into BlowUpError with the offending node.
    """
    p = gp.R * theta / v + gp.a * theta**4 / 3.0
    kappa = gp.kappa1 + gp.kappa2 * v * theta**gp.b
    phi = gp.K * theta**gp.beta * np.exp(-gp.A / theta)

    inv2dx = 1.0 / (2.0 * dx)
    d0_u = (u[2:] - u[:-2]) * inv2dx
    d0_p = (p[2:] - p[:-2]) * inv2dx

    v_f = 0.5 * (v[1:] + v[:-1])
    kappa_f = 0.5 * (kappa[1:] + kappa[:-1])
    flux_u = gp.mu * (u[1:] - u[:-1]) / (dx * v_f)
    flux_th = kappa_f * (theta[1:] - theta[:-1]) / (dx * v_f)
    flux_z = gp.d * (z[1:] - z[:-1]) / (dx * v_f**2)

    vi = v[1:-1]
    ti = theta[1:-1]
    zi = z[1:-1]
    phii = phi[1:-1]
    p_th = gp.R / vi + 4.0 * gp.a * ti**3 / 3.0
    e_th = gp.Cv + 4.0 * gp.a * vi * ti**3

    dv = d0_u
    du = -d0_p + (flux_u[1:] - flux_u[:-1]) / dx
    dtheta = (
        -ti * p_th * d0_u
        + (flux_th[1:] - flux_th[:-1]) / dx
        + gp.mu * d0_u**2 / vi
        + gp.lambda_heat * phii * zi
    ) / e_th
    dz = (flux_z[1:] - flux_z[:-1]) / dx - phii * zi
    return dv, du, dtheta, dz


def step(state: SimulationState, dt: float) -> SimulationState:
    """Advance the snapshot by one Heun step of size ``dt``.

    The caller is responsible for dt <= stable_dt(state, 1).  Edge nodes
    are reassigned the smooth-wave values at the new time.  NaN or loss
    of positivity raises BlowUpError carrying the offending node.
    """
    gp = state.gp
    dx = state.grid.dx
    s = state.snapshot
    t_new = s.t + dt
    Vb, Ub, Tb = state.boundary_values(t_new)

    with np.errstate(all="ignore"):
        k1 = _rhs(gp, dx, s.v, s.u, s.theta, s.z)
        mids = []
        for arr, k in zip((s.v, s.u, s.theta, s.z), k1):
            m = arr.copy()
            m[1:-1] += dt * k
            mids.append(m)
        for m, edge in zip(mids, ((Vb[0], Vb[1]), (Ub[0], Ub[1]), (Tb[0], Tb[1]), (0.0, 0.0))):
            m[0], m[-1] = edge
        k2 = _rhs(gp, dx, *mids)
        out = []
        for arr, a1, a2 in zip((s.v, s.u, s.theta, s.z), k1, k2):
            o = arr.copy()
            o[1:-1] += 0.5 * dt * (a1 + a2)
            out.append(o)
        for o, edge in zip(out, ((Vb[0], Vb[1]), (Ub[0], Ub[1]), (Tb[0], Tb[1]), (0.0, 0.0))):
            o[0], o[-1] = edge
    v, u, theta, z = out

    for name, arr in (("v", v), ("theta", theta)):
        bad = ~np.isfinite(arr) | (arr <= 0.0)
        if bad.any():
            cell = int(np.argmax(bad))
            raise BlowUpError(t_new, cell, f"{name} became {arr[cell]!r}")
    for name, arr in (("u", u), ("z", z)):
        bad = ~np.isfinite(arr)
        if bad.any():
            cell = int(np.argmax(bad))
            raise BlowUpError(t_new, cell, f"{name} became {arr[cell]!r}")

    state.snapshot = FieldSnapshot(t=t_new, v=v, u=u, theta=theta, z=z)
    state.step_count += 1
    return state


def _collect_record(state: SimulationState) -> "diagnostics.DiagnosticsRecord":
    snap = state.snapshot
    x = state.grid.x()
    prof = state.wave.sample(snap.t, x, farfield_tol=None)
    return diagnostics.collect(state.gp, snap, prof, state.fan, x)


def run(config, out_dir=None, quiet: bool = True):
    """Drive a configured scenario from t = 0 to t_end.

    Emits a DiagnosticsRecord at t = 0, every ``output_interval``, and at
    ``t_end``; writes snapshot CSVs at the configured times and the full
    time series at the end (both only when ``out_dir`` is given).  The
    step size is adaptive and clipped so every output time is hit exactly,
    making repeated runs of one config bit-identical.  On blow-up the
    partial outputs are flushed before the error propagates.
    """
    from pathlib import Path

    from . import cli_io

    state = initialize(
        config.gas, config.rd, config.grid, config.perturbations, eps=config.eps, q=config.q
    )
    t_end = config.t_end
    interval = config.output_interval
    snapshot_times = sorted(set(config.snapshot_times))
    records = state.records
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    wall0 = time.perf_counter()

    def emit_record():
        records.append(_collect_record(state))
        if not quiet:
            r = records[-1]
            rate = state.step_count / max(time.perf_counter() - wall0, 1e-9)
            print(
                f"t={r.t:10.4f}  sup_v={r.sup_v:.4e}  sup_u={r.sup_u:.4e}  "
                f"eta={r.eta_total:.4e}  steps={state.step_count} ({rate:.0f}/s)"
            )

    def write_snapshot(t):
        if out is None:
            return
        x = state.grid.x()
        prof = state.wave.sample(t, x, farfield_tol=None)
        cli_io.write_snapshot_csv(state.snapshot, prof, out / f"snapshot_t{t:g}.csv")

    def flush_timeseries():
        if out is not None:
            cli_io.write_timeseries_csv(records, out / "timeseries.csv")

    emit_record()
    if any(abs(ts) <= 1e-12 for ts in snapshot_times):
        write_snapshot(0.0)

    eps_t = 1e-9 * max(1.0, t_end)
    next_output = interval if interval > 0.0 else t_end
    pending_snaps = [ts for ts in snapshot_times if ts > eps_t]
    try:
        t = 0.0
        while t < t_end - eps_t:
            stop = min(next_output, t_end)
            if pending_snaps:
                stop = min(stop, pending_snaps[0])
            dt = min(stable_dt(state, config.cfl), stop - t)
            step(state, dt)
            t = state.snapshot.t
            if pending_snaps and t >= pending_snaps[0] - eps_t:
                write_snapshot(pending_snaps.pop(0))
            if t >= min(next_output, t_end) - eps_t:
                emit_record()
                while next_output <= t + eps_t:
                    next_output += interval if interval > 0.0 else t_end
    except BlowUpError as err:
        flush_timeseries()
        if out is not None:
            (out / "run_error.txt").write_text(f"{err}\n", encoding="utf-8")
        raise
    flush_timeseries()
    return state, records
