"""Quantitative health checks of a running solution.

The central object is the relative entropy density

    eta = Cv*Theta*Phi(theta/Theta) + R*Theta*Phi(v/V) + (u - U)^2/2
          + (a*v*(theta - Theta)^2 / 3) * (3*theta^2 + 2*theta*Theta + Theta^2),
    Phi(x) = x - ln(x) - 1,

a pointwise-nonnegative convex distance from the solution to the smooth
wave profile (V, U, Theta).  Its grid integral should stay bounded along
a stable run, with dissipation rate

    D = integral of mu*Theta*(du_x)^2/(v*theta) + kappa(v,theta)*Theta*(dtheta_x)^2/(v*theta^2)

where du, dtheta are the perturbations u - U, theta - Theta.  Asymptotic
convergence is measured against the exact fan: per-component sup norms of
(v - V_fan, u - U_fan, s - s_bar, z) evaluated at xi = x/t.

Perturbation derivatives use the same central stencils as the solver, so
the discrete dissipation is consistent with the discrete evolution.  All
functions are pure; repeated evaluation is bit-identical.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import thermo
from .thermo import GasParams, ThermoState

__all__ = [
    "DiagnosticsRecord",
    "BoundsReport",
    "phi_bregman",
    "relative_entropy_density",
    "total_relative_entropy",
    "dissipation_rate",
    "sup_distance_to_fan",
    "bounds_report",
    "h1_perturbation",
    "collect",
]


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Scalar diagnostics at one output time."""

    t: float
    sup_v: float
    sup_u: float
    sup_s: float
    sup_z: float
    eta_total: float
    dissipation: float
    h1_perturbation: float
    min_v: float
    max_v: float
    min_theta: float
    max_theta: float
    min_z: float
    max_z: float
    reactant_mass: float


@dataclass(frozen=True)
class BoundsReport:
    min_v: float
    max_v: float
    min_theta: float
    max_theta: float
    min_z: float
    max_z: float
    reactant_mass: float


def phi_bregman(x):
    """Phi(x) = x - ln(x) - 1; nonnegative, zero only at x = 1."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError(f"phi_bregman needs positive arguments, got {x!r}")
    out = arr - np.log(arr) - 1.0
    return float(out) if out.ndim == 0 else out


def relative_entropy_density(gp: GasParams, cell, wave_cell):
    """Pointwise relative entropy of (v, u, theta) against (V, U, Theta)."""
    v, u, th = (np.asarray(q, dtype=float) for q in cell)
    V, U, Th = (np.asarray(q, dtype=float) for q in wave_cell)
    for name, arr in (("v", v), ("theta", th), ("V", V), ("Theta", Th)):
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError(f"relative_entropy_density: {name} must be positive")
    eta = (
        gp.Cv * Th * phi_bregman(th / Th)
        + gp.R * Th * phi_bregman(v / V)
        + 0.5 * (u - U) ** 2
        + gp.a * v * (th - Th) ** 2 / 3.0 * (3.0 * th**2 + 2.0 * th * Th + Th**2)
    )
    return float(eta) if eta.ndim == 0 else eta


def total_relative_entropy(gp: GasParams, snapshot, profile) -> float:
    """Trapezoidal integral of the relative entropy density over the grid."""
    eta = relative_entropy_density(
        gp, (snapshot.v, snapshot.u, snapshot.theta), (profile.V, profile.U, profile.Theta)
    )
    dx = float(profile.x[1] - profile.x[0])
    return float(np.trapezoid(eta, dx=dx))


def dissipation_rate(gp: GasParams, snapshot, profile) -> float:
    """Viscous plus conductive entropy dissipation against the profile."""
    du = snapshot.u - profile.U
    dth = snapshot.theta - profile.Theta
    dx = float(profile.x[1] - profile.x[0])
    du_x = (du[2:] - du[:-2]) / (2.0 * dx)
    dth_x = (dth[2:] - dth[:-2]) / (2.0 * dx)
    v = snapshot.v[1:-1]
    th = snapshot.theta[1:-1]
    Th = profile.Theta[1:-1]
    kappa = thermo.conductivity(gp, ThermoState(v, th))
    integrand = np.zeros_like(snapshot.v)
    integrand[1:-1] = gp.mu * Th * du_x**2 / (v * th) + kappa * Th * dth_x**2 / (v * th**2)
    return float(np.trapezoid(integrand, dx=dx))


def sup_distance_to_fan(gp: GasParams, snapshot, fan, x) -> tuple[float, float, float, float]:
    """Per-component sup distance to the exact fan at xi = x/t.

    At t = 0 the similarity variable degenerates; the convention is the
    xi-limits by sign of x (far fields left/right, the fan value at xi = 0
    on the center node if one sits exactly at x = 0).
    """
    x = np.asarray(x, dtype=float)
    t = snapshot.t
    if t > 0.0:
        xi = x / t
    else:
        big = 1e300
        xi = np.where(x < 0.0, -big, np.where(x > 0.0, big, 0.0))
    Vr, Ur, Tr = fan.eval(xi)
    s = thermo.entropy(gp, ThermoState(snapshot.v, snapshot.theta))
    sup_v = float(np.max(np.abs(snapshot.v - Vr)))
    sup_u = float(np.max(np.abs(snapshot.u - Ur)))
    sup_s = float(np.max(np.abs(s - fan.rd.s_bar)))
    sup_z = float(np.max(np.abs(snapshot.z)))
    return sup_v, sup_u, sup_s, sup_z


def bounds_report(snapshot, dx: float) -> BoundsReport:
    """Elementwise extrema and the trapezoidal reactant mass."""
    return BoundsReport(
        min_v=float(snapshot.v.min()),
        max_v=float(snapshot.v.max()),
        min_theta=float(snapshot.theta.min()),
        max_theta=float(snapshot.theta.max()),
        min_z=float(snapshot.z.min()),
        max_z=float(snapshot.z.max()),
        reactant_mass=float(np.trapezoid(snapshot.z, dx=dx)),
    )


def h1_perturbation(snapshot, profile) -> float:
    """Discrete H1 norm of (v - V, u - U, theta - Theta)."""
    dx = float(profile.x[1] - profile.x[0])
    total = 0.0
    for sol, ref in ((snapshot.v, profile.V), (snapshot.u, profile.U), (snapshot.theta, profile.Theta)):
        d = sol - ref
        total += float(np.trapezoid(d * d, dx=dx))
        grad = (d[2:] - d[:-2]) / (2.0 * dx)
        inner = np.zeros_like(d)
        inner[1:-1] = grad * grad
        total += float(np.trapezoid(inner, dx=dx))
    return float(np.sqrt(total))


def collect(gp: GasParams, snapshot, profile, fan, x) -> DiagnosticsRecord:
    """Assemble the full record for one output time."""
    sup_v, sup_u, sup_s, sup_z = sup_distance_to_fan(gp, snapshot, fan, x)
    bounds = bounds_report(snapshot, float(profile.x[1] - profile.x[0]))
    return DiagnosticsRecord(
        t=float(snapshot.t),
        sup_v=sup_v,
        sup_u=sup_u,
        sup_s=sup_s,
        sup_z=sup_z,
        eta_total=total_relative_entropy(gp, snapshot, profile),
        dissipation=dissipation_rate(gp, snapshot, profile),
        h1_perturbation=h1_perturbation(snapshot, profile),
        min_v=bounds.min_v,
        max_v=bounds.max_v,
        min_theta=bounds.min_theta,
        max_theta=bounds.max_theta,
        min_z=bounds.min_z,
        max_z=bounds.max_z,
        reactant_mass=bounds.reactant_mass,
    )
