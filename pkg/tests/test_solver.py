"""Time integrator: exact fixed points, reactor oracles, step control,
initialization contracts, and conservation trends."""
import numpy as np
import pytest
from scipy.integrate import solve_ivp

from radgas.solver import (
    BlowUpError,
    FieldSnapshot,
    Grid1D,
    PerturbationSpec,
    ScenarioError,
    initialize,
    stable_dt,
    step,
)
from radgas.thermo import GasParams, ThermoState
from radgas.thermo import conductivity as kappa_of
from radgas.thermo import energy_theta, p_tilde_v_vt, reaction_rate
from radgas.waves import RiemannData


def constant_rd(gp, v=1.0, u=0.0, theta=1.0):
    return RiemannData.from_far_fields(gp, v, u, theta, v, u, theta)


def make_uniform_state(gp, n=64, L=10.0, v=1.0, theta=1.0, z_pert=()):
    rd = constant_rd(gp, v=v, theta=theta)
    grid = Grid1D(-L, L, n)
    return initialize(gp, rd, grid, z_pert)


# ---------------------------------------------------------------------------
# grid and snapshot contracts
# ---------------------------------------------------------------------------


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(-1.0, 1.0, 8)
    with pytest.raises(ValueError):
        Grid1D(1.0, -1.0, 32)
    g = Grid1D(-2.0, 2.0, 17)
    assert g.dx == pytest.approx(0.25)
    assert len(g.x()) == 17


def test_snapshot_validation():
    ones = np.ones(8)
    with pytest.raises(ValueError):
        FieldSnapshot(0.0, -ones, ones, ones, ones)
    with pytest.raises(ValueError):
        FieldSnapshot(0.0, ones, ones, 0.0 * ones, ones)
    # out-of-bound z is monitored, not rejected
    snap = FieldSnapshot(0.0, ones, ones, ones, 2.0 * ones)
    assert snap.z.max() == 2.0


def test_perturbation_shapes():
    g = PerturbationSpec("v", "gaussian", 0.5, 1.0, 2.0)
    assert g(np.array([1.0]))[0] == pytest.approx(0.5)
    b = PerturbationSpec("z", "bump", 0.8, 0.0, 3.0)
    vals = b(np.array([0.0, 2.9999, 3.1, 50.0]))
    assert vals[0] == pytest.approx(0.8)
    assert vals[1] >= 0.0 and vals[2] == 0.0 and vals[3] == 0.0
    with pytest.raises(ValueError):
        PerturbationSpec("rho", "gaussian", 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        PerturbationSpec("v", "tophat", 1.0, 0.0, 1.0)


# ---------------------------------------------------------------------------
# initialize
# ---------------------------------------------------------------------------


def test_initialize_constant_scenario():
    gp = GasParams(R=1.0, a=0.0)
    state = make_uniform_state(gp, v=1.3, theta=0.9)
    assert np.all(state.snapshot.v == pytest.approx(1.3, rel=1e-12))
    assert np.all(state.snapshot.u == pytest.approx(0.0, abs=1e-12))
    assert np.all(state.snapshot.z == 0.0)


def test_initialize_applies_bump_at_center():
    gp = GasParams(R=1.0, a=0.0)
    rd = constant_rd(gp)
    grid = Grid1D(-20.0, 20.0, 81)  # node exactly at x=0
    state = initialize(gp, rd, grid, (PerturbationSpec("v", "gaussian", 0.1, 0.0, 2.0),))
    mid = 40
    assert state.snapshot.v[mid] == pytest.approx(1.0 + 0.1, rel=1e-12)


def test_initialize_full_amplitude_z_allowed():
    gp = GasParams(R=1.0)
    state = make_uniform_state(gp, z_pert=(PerturbationSpec("z", "gaussian", 1.0, 0.0, 1.0),), n=201)
    assert state.snapshot.z.max() == pytest.approx(1.0)


def test_initialize_rejects_non_decaying_perturbation():
    gp = GasParams(R=1.0)
    rd = constant_rd(gp)
    with pytest.raises(ScenarioError, match="decay"):
        initialize(gp, rd, Grid1D(-5.0, 5.0, 33), (PerturbationSpec("v", "gaussian", 0.1, 0.0, 10.0),))


def test_initialize_rejects_vacuum():
    gp = GasParams(R=1.0)
    rd = constant_rd(gp)
    with pytest.raises(ScenarioError, match="volume"):
        initialize(gp, rd, Grid1D(-40.0, 40.0, 65), (PerturbationSpec("v", "gaussian", -1.5, 0.0, 3.0),))


def test_initialize_rejects_bad_z():
    gp = GasParams(R=1.0)
    rd = constant_rd(gp)
    with pytest.raises(ScenarioError, match="reactant"):
        initialize(gp, rd, Grid1D(-40.0, 40.0, 65), (PerturbationSpec("z", "gaussian", 1.2, 0.0, 3.0),))


# ---------------------------------------------------------------------------
# stable_dt
# ---------------------------------------------------------------------------


def test_stable_dt_advective_limit():
    tiny = 1e-12
    gp = GasParams(R=1.0, a=0.0, mu=tiny, kappa1=tiny, kappa2=tiny, d=tiny)
    state = make_uniform_state(gp, n=64, L=10.0)
    dx = state.grid.dx
    c = 1.0 * np.sqrt(-p_tilde_v_vt(gp, ThermoState(1.0, 1.0)))
    assert stable_dt(state, 0.5) == pytest.approx(0.5 * dx / c, rel=1e-12)


def test_stable_dt_diffusive_scaling():
    gp = GasParams(R=1.0, kappa1=50.0, kappa2=1e-12, mu=1e-12, d=1e-12)
    coarse = make_uniform_state(gp, n=64, L=10.0)
    fine = make_uniform_state(gp, n=127, L=10.0)  # halves dx
    assert stable_dt(coarse, 1.0) == pytest.approx(4.0 * stable_dt(fine, 1.0), rel=1e-10)


def test_stable_dt_smoke_standard_scenario():
    gp = GasParams(R=1.0, a=1e-3, mu=0.5, kappa1=0.5, kappa2=0.5, b=3.0, d=0.5)
    rd = RiemannData.from_far_fields(gp, 1.0, 0.0, 1.0, 1.0, 0.2, 1.0)
    state = initialize(gp, rd, Grid1D(-50.0, 50.0, 512))
    dt = stable_dt(state, 0.4)
    assert np.isfinite(dt) and dt > 0.0


# ---------------------------------------------------------------------------
# step
# ---------------------------------------------------------------------------


def test_constant_state_is_fixed_point():
    gp = GasParams(R=1.0, a=1e-3, mu=0.7, kappa1=0.3, kappa2=0.4, b=4.0, d=0.2, lambda_heat=2.0, K=1.0, A=1.0)
    state = make_uniform_state(gp, n=64, L=10.0, v=1.2, theta=0.8)
    v0 = state.snapshot.v.copy()
    u0 = state.snapshot.u.copy()
    th0 = state.snapshot.theta.copy()
    dt = stable_dt(state, 0.5)
    for _ in range(1000):
        step(state, dt)
    assert np.max(np.abs(state.snapshot.v - v0)) <= 1e-12
    assert np.max(np.abs(state.snapshot.u - u0)) <= 1e-12
    assert np.max(np.abs(state.snapshot.theta - th0)) <= 1e-12


def test_exponential_reactant_decay_without_heat_release():
    # lambda = 0, diffusion negligible: every interior node obeys
    # z' = -phi(theta_bar) z exactly
    gp = GasParams(R=1.0, a=0.0, mu=0.3, kappa1=0.3, kappa2=0.3, b=3.0, d=1e-12,
                   lambda_heat=0.0, K=1.0, A=1.0, beta=0.0)
    rd = constant_rd(gp)
    grid = Grid1D(-20.0, 20.0, 128)
    z0 = 0.8
    state = initialize(gp, rd, grid, (PerturbationSpec("z", "bump", z0, 0.0, 15.0),))
    phi = reaction_rate(gp, 1.0)
    t_end = 1.0 / phi
    mid = 64
    z_init = state.snapshot.z[mid]
    while state.snapshot.t < t_end:
        step(state, min(stable_dt(state, 0.4), t_end - state.snapshot.t))
    assert state.snapshot.theta[mid] == pytest.approx(1.0, rel=1e-12)
    assert state.snapshot.z[mid] == pytest.approx(z_init * np.exp(-phi * t_end), rel=1e-4)


def test_reactor_oracle_with_heat_release():
    # locally uniform interior, lambda > 0: the center node follows the
    # 0-D reactor
    #   theta' = lambda*phi(theta)*z/e_theta(v, theta),  z' = -phi(theta)*z
    # until acoustic signals from the reactant falloff / held edges arrive
    # (the bump is kept wide so its curvature at the center is negligible)
    gp = GasParams(R=1.0, a=1e-3, mu=0.2, kappa1=1e-8, kappa2=1e-8, b=3.0, d=1e-12,
                   lambda_heat=0.8, K=1.0, A=1.0, beta=0.0)
    rd = constant_rd(gp)
    grid = Grid1D(-35.0, 35.0, 281)
    z0 = 0.9
    state = initialize(gp, rd, grid, (PerturbationSpec("z", "bump", z0, 0.0, 30.0),))
    t_end = 2.0  # acoustic travel time from the falloff region is ~15
    mid = 140

    def odes(t, y):
        th, z = y
        phi = gp.K * th**gp.beta * np.exp(-gp.A / th)
        e_th = float(energy_theta(gp, ThermoState(1.0, th)))
        return [gp.lambda_heat * phi * z / e_th, -phi * z]

    sol = solve_ivp(odes, (0.0, t_end), [1.0, float(state.snapshot.z[mid])],
                    rtol=1e-11, atol=1e-13, dense_output=True)
    thetas = [state.snapshot.theta[mid]]
    zs = [state.snapshot.z[mid]]
    while state.snapshot.t < t_end:
        step(state, min(stable_dt(state, 0.4), t_end - state.snapshot.t))
        thetas.append(state.snapshot.theta[mid])
        zs.append(state.snapshot.z[mid])
    th_ref, z_ref = sol.y[0, -1], sol.y[1, -1]
    assert state.snapshot.theta[mid] == pytest.approx(th_ref, rel=1e-3)
    assert state.snapshot.z[mid] == pytest.approx(z_ref, rel=1e-3)
    # heat release: monotone heating and consumption at the center
    assert np.all(np.diff(thetas) >= -1e-14)
    assert np.all(np.diff(zs) <= 1e-14)


def test_step_blowup_reports_cell():
    gp = GasParams(R=1.0, a=0.0, mu=1e-10, kappa1=1e-10, kappa2=1e-10, d=1e-10)
    rd = constant_rd(gp)
    state = initialize(gp, rd, Grid1D(-20.0, 20.0, 64),
                       (PerturbationSpec("u", "gaussian", 5.0, 0.0, 2.0),))
    with pytest.raises(BlowUpError) as err:
        for _ in range(2000):
            step(state, 10.0 * stable_dt(state, 1.0))
    assert err.value.cell >= 0
    assert err.value.t > 0.0


def test_run_with_zero_horizon_returns_single_record():
    import json

    from radgas import solver
    from radgas.cli_io import parse_config

    cfg = parse_config(json.dumps({
        "riemann": {"v_minus": 1.0, "u_minus": 0.0, "theta_minus": 1.0,
                    "v_plus": 1.0, "u_plus": 0.1},
        "grid": {"L": 40.0, "n": 64},
        "time": {"t_end": 0.0},
    }))
    state, records = solver.run(cfg, quiet=True)
    assert state.snapshot.t == 0.0
    assert len(records) == 1 and records[0].t == 0.0


def test_reactant_mass_nonincreasing():
    gp = GasParams(R=1.0, a=0.0, mu=0.4, kappa1=0.4, kappa2=0.4, b=3.0, d=0.4,
                   lambda_heat=0.2, K=0.5, A=1.0, beta=0.0)
    rd = constant_rd(gp)
    grid = Grid1D(-15.0, 15.0, 128)
    state = initialize(gp, rd, grid, (PerturbationSpec("z", "gaussian", 0.7, 0.0, 2.0),))
    dx = grid.dx
    masses = [float(np.trapezoid(state.snapshot.z, dx=dx))]
    for _ in range(40):
        for _ in range(10):
            step(state, stable_dt(state, 0.4))
        masses.append(float(np.trapezoid(state.snapshot.z, dx=dx)))
    masses = np.array(masses)
    assert np.all(np.diff(masses) <= 1e-10)
    assert state.snapshot.z.min() >= -1e-12
    assert state.snapshot.z.max() <= 1.0 + 1e-12
