"""Constitutive laws for a viscous, radiative, reactive ideal gas.

The gas combines a perfect polytropic contribution with Stefan-Boltzmann
radiation in local thermodynamic equilibrium:

    p(v, theta) = R*theta/v + a*theta^4/3
    e(v, theta) = Cv*theta + a*v*theta^4
    s(v, theta) = Cv*ln(theta) + (4/3)*a*v*theta^3 + R*ln(v)

with specific volume v, absolute temperature theta, gas constant R,
specific heat Cv (3R/2 for a radiative monatomic gas), and radiation
constant a.  Setting a = 0 recovers the ideal polytropic gas.

Choosing (v, s) as independent variables defines the isentropic pressure
p_tilde(v, s) = p(v, theta_tilde(v, s)), whose first and second partial
derivatives drive the wave construction and the convexity diagnostics.
The second derivatives in the (v, s) plane have closed forms in terms of
(v, theta); they are evaluated here exactly, with no finite differencing.

Also housed here: the Arrhenius reaction rate K*theta^beta*exp(-A/theta),
the thermal conductivity kappa1 + kappa2*v*theta^b, and the Lagrangian
characteristic speeds +-sqrt(-dp_tilde/dv).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import ConvergenceError, newton_bisect

__all__ = [
    "GasParams",
    "ThermoState",
    "EntropyState",
    "HessianReport",
    "pressure",
    "pressure_theta",
    "internal_energy",
    "energy_theta",
    "entropy",
    "entropy_v",
    "entropy_theta",
    "temperature_from_entropy",
    "p_tilde",
    "p_tilde_v",
    "p_tilde_v_vt",
    "p_tilde_hessian",
    "hessian_vt",
    "char_speed",
    "reaction_rate",
    "conductivity",
    "convexity_threshold",
]

# temperature inversion never brackets outside this range
_THETA_FLOOR = 1e-12
_THETA_CEIL = 1e12


def _require_positive(name: str, value) -> None:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def _require_nonnegative(name: str, value) -> None:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise ValueError(f"{name} must be nonnegative and finite, got {value!r}")


@dataclass(frozen=True)
class GasParams:
    """Physical constants of the model.

    ``Cv`` defaults to ``1.5 * R``, the radiative monatomic value; pass an
    explicit value to override.  All constants are dimensionless: the
    interesting regimes are set by the size of ``a`` and of the wave
    strength relative to O(1) states, not by SI magnitudes.
    """

    R: float = 1.0
    Cv: float | None = None
    a: float = 0.0
    mu: float = 1.0
    kappa1: float = 1.0
    kappa2: float = 1.0
    b: float = 3.0
    d: float = 1.0
    lambda_heat: float = 0.0
    K: float = 0.0
    A: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.Cv is None:
            object.__setattr__(self, "Cv", 1.5 * self.R)
        for name in ("R", "Cv", "mu", "kappa1", "kappa2", "b", "d"):
            _require_positive(f"GasParams.{name}", getattr(self, name))
        for name in ("a", "lambda_heat", "K", "A", "beta"):
            _require_nonnegative(f"GasParams.{name}", getattr(self, name))


@dataclass(frozen=True)
class ThermoState:
    """A point (or grid of points) in the (v, theta) plane."""

    v: object
    theta: object

    def __post_init__(self):
        _require_positive("ThermoState.v", self.v)
        _require_positive("ThermoState.theta", self.theta)


@dataclass(frozen=True)
class EntropyState:
    """A point (or grid of points) in the (v, s) plane."""

    v: object
    s: object

    def __post_init__(self):
        _require_positive("EntropyState.v", self.v)
        if not np.all(np.isfinite(np.asarray(self.s, dtype=float))):
            raise ValueError(f"EntropyState.s must be finite, got {self.s!r}")


@dataclass(frozen=True)
class HessianReport:
    """Second derivatives of p_tilde(v, s) and the convexity verdict.

    ``det`` is the Hessian determinant p_vv*p_ss - p_vs**2, evaluated from
    its own closed form; ``convex`` holds wherever p_vv > 0, p_ss > 0 and
    det >= 0.
    """

    p_vv: object
    p_vs: object
    p_ss: object
    det: object
    convex: object


def pressure(gp: GasParams, st: ThermoState):
    """p = R*theta/v + a*theta^4/3."""
    return gp.R * st.theta / st.v + gp.a * st.theta**4 / 3.0


def pressure_theta(gp: GasParams, st: ThermoState):
    """dp/dtheta at fixed v: R/v + (4/3)*a*theta^3."""
    return gp.R / st.v + 4.0 * gp.a * st.theta**3 / 3.0


def internal_energy(gp: GasParams, st: ThermoState):
    """e = Cv*theta + a*v*theta^4."""
    return gp.Cv * st.theta + gp.a * st.v * st.theta**4


def energy_theta(gp: GasParams, st: ThermoState):
    """de/dtheta at fixed v: Cv + 4*a*v*theta^3 (the effective heat capacity)."""
    return gp.Cv + 4.0 * gp.a * st.v * st.theta**3


def entropy(gp: GasParams, st: ThermoState):
    """s = Cv*ln(theta) + (4/3)*a*v*theta^3 + R*ln(v)."""
    return gp.Cv * np.log(st.theta) + 4.0 * gp.a * st.v * st.theta**3 / 3.0 + gp.R * np.log(st.v)


def entropy_v(gp: GasParams, st: ThermoState):
    """ds/dv at fixed theta: R/v + (4/3)*a*theta^3 (equals dp/dtheta; Maxwell)."""
    return gp.R / st.v + 4.0 * gp.a * st.theta**3 / 3.0


def entropy_theta(gp: GasParams, st: ThermoState):
    """ds/dtheta at fixed v: Cv/theta + 4*a*v*theta^2, strictly positive."""
    return gp.Cv / st.theta + 4.0 * gp.a * st.v * st.theta**2


def _theta_from_entropy_arrays(gp: GasParams, v: np.ndarray, s: np.ndarray, tol: float) -> np.ndarray:
    """Core inversion on raw broadcast arrays; see temperature_from_entropy."""
    with np.errstate(all="ignore"):
        guess = np.exp((s - gp.R * np.log(v)) / gp.Cv)
    if gp.a == 0.0:
        # ideal gas: the seed is the exact closed form
        if not np.all(np.isfinite(guess)) or np.any(guess <= 0.0):
            raise ConvergenceError("temperature_from_entropy: ideal-gas closed form overflowed")
        return guess

    def fdf(theta):
        return (
            gp.Cv * np.log(theta) + 4.0 * gp.a * v * theta**3 / 3.0 + gp.R * np.log(v) - s,
            gp.Cv / theta + 4.0 * gp.a * v * theta**2,
        )

    resid = lambda theta: fdf(theta)[0]
    ftol = tol * np.maximum(1.0, np.abs(s))

    # radiation only lowers theta below the ideal-gas value, so
    # [guess/8, guess] brackets the root in all but extreme states;
    # fall back to full geometric expansion from theta = 1 when it fails
    with np.errstate(all="ignore"):
        guess = np.clip(np.where(np.isfinite(guess), guess, 1.0), _THETA_FLOOR, _THETA_CEIL)
        lo = np.maximum(guess / 8.0, _THETA_FLOOR)
        hi = guess
        quick = (resid(lo) <= 0.0) & (resid(hi) >= 0.0)
        if not quick.all():
            lo = np.where(quick, lo, 1.0)
            hi = np.where(quick, hi, 1.0)
            while True:
                mask = resid(lo) > 0.0
                if not mask.any():
                    break
                if np.any(lo[mask] <= _THETA_FLOOR):
                    raise ConvergenceError("temperature_from_entropy: bracket fell below 1e-12")
                lo = np.where(mask, np.maximum(lo / 8.0, _THETA_FLOOR), lo)
            while True:
                mask = resid(hi) < 0.0
                if not mask.any():
                    break
                if np.any(hi[mask] >= _THETA_CEIL):
                    raise ConvergenceError("temperature_from_entropy: bracket grew beyond 1e12")
                hi = np.where(mask, np.minimum(hi * 8.0, _THETA_CEIL), hi)

    return newton_bisect(None, None, lo, hi, 0.25 * ftol, fdf=fdf)


def temperature_from_entropy(gp: GasParams, es: EntropyState, tol: float = 1e-12):
    """Invert s(v, theta) = s for theta at fixed v.

    The inverse exists and is unique because s is strictly increasing in
    theta.  A bracket is grown geometrically (bounded by [1e-12, 1e12];
    exceeding it raises ConvergenceError), then the root is polished by
    safeguarded Newton seeded with the ideal-gas closed form
    exp((s - R*ln v)/Cv), which is exact when a = 0.  Convergence is in
    entropy residual: |s(v, theta) - s| <= tol*max(1, |s|).
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    v = np.asarray(es.v, dtype=float)
    s = np.asarray(es.s, dtype=float)
    v, s = np.broadcast_arrays(v, s)
    scalar = v.ndim == 0
    theta = _theta_from_entropy_arrays(gp, np.atleast_1d(v), np.atleast_1d(s), tol)
    return float(theta[0]) if scalar else theta


def p_tilde(gp: GasParams, es: EntropyState, tol: float = 1e-12):
    """p_tilde(v, s) = p(v, theta_tilde(v, s))."""
    theta = temperature_from_entropy(gp, es, tol)
    return pressure(gp, ThermoState(es.v, theta))


def p_tilde_v_vt(gp: GasParams, st: ThermoState):
    """dp_tilde/dv at fixed s, parameterized by (v, theta).

    Chain rule through the entropy inversion:
    p_tilde_v = p_v - p_theta * s_v / s_theta, always strictly negative.
    """
    p_v = -gp.R * st.theta / st.v**2
    p_th = pressure_theta(gp, st)
    s_v = entropy_v(gp, st)
    s_th = entropy_theta(gp, st)
    return p_v - p_th * s_v / s_th


def p_tilde_v(gp: GasParams, es: EntropyState, tol: float = 1e-12):
    """dp_tilde/dv at fixed s, for a point in the (v, s) plane."""
    theta = temperature_from_entropy(gp, es, tol)
    return p_tilde_v_vt(gp, ThermoState(es.v, theta))


def hessian_vt(gp: GasParams, st: ThermoState) -> HessianReport:
    """Second derivatives of p_tilde(v, s), parameterized by (v, theta).

    p_vv, p_ss and det evaluate closed-form expressions; the cross
    derivative p_vs comes from a second exact chain-rule differentiation
    of p_tilde_v with respect to s (through theta_tilde), which avoids the
    sign ambiguity of reconstructing it from the determinant.
    """
    v = np.asarray(st.v, dtype=float)
    th = np.asarray(st.theta, dtype=float)
    R, Cv, a = gp.R, gp.Cv, gp.a
    s_th = Cv / th + 4.0 * a * v * th**2

    p_vv = (
        (Cv * R**3 + 3.0 * Cv**2 * R**2 + 2.0 * Cv**3 * R) / (v**3 * th**2)
        + (40.0 * a * Cv * R**2 + 28.0 * a * Cv**2 * R - 8.0 * a * R**3) * th / v**2
        + (496.0 * a**2 * Cv * R + 192.0 * a**2 * R**2) * th**4 / (3.0 * v)
        + (640.0 * a**3 * Cv + 7488.0 * a**3 * R) * th**7 / 27.0
        + 1792.0 * a**4 * v * th**10 / 27.0
    ) / s_th**3

    # theta_tilde_s = 1/s_theta, so the prefactor theta_tilde_s^2/s_theta
    # collapses to 1/s_theta^3
    p_ss = (
        Cv * R / (v * th**2)
        + (16.0 * a * Cv / 3.0 - 8.0 * a * R) * th
        + 16.0 * a**2 * v * th**4 / 3.0
    ) / s_th**3

    det = (
        (Cv * R**3 + Cv**2 * R**2) / (th**2 * v**4)
        + (32.0 * a * Cv**2 * R - 52.0 * a * Cv * R**2 - 24.0 * a * R**3) * th / (3.0 * v**3)
        + (448.0 * a**2 * Cv * R - 1200.0 * a**2 * R**2) * th**4 / (9.0 * v**2)
        - 320.0 * a**3 * R * th**7 / (9.0 * v)
        - 256.0 * a**4 * th**10 / 9.0
    ) / s_th**4

    # p_vs = d/ds [p_tilde_v] = F_theta / s_theta with
    # F(v, theta) = p_v - p_theta*s_v/s_theta
    p_vth = -R / v**2
    p_th = R / v + 4.0 * a * th**3 / 3.0
    p_thth = 4.0 * a * th**2
    s_v = R / v + 4.0 * a * th**3 / 3.0
    s_vth = 4.0 * a * th**2
    s_thth = -Cv / th**2 + 8.0 * a * v * th
    F_th = p_vth - (p_thth * s_v + p_th * s_vth) / s_th + p_th * s_v * s_thth / s_th**2
    p_vs = F_th / s_th

    convex = (p_vv > 0.0) & (p_ss > 0.0) & (det >= 0.0)
    if v.ndim == 0:
        return HessianReport(float(p_vv), float(p_vs), float(p_ss), float(det), bool(convex))
    return HessianReport(p_vv, p_vs, p_ss, det, convex)


def p_tilde_hessian(gp: GasParams, es: EntropyState, tol: float = 1e-12) -> HessianReport:
    """Second derivatives of p_tilde at a point in the (v, s) plane."""
    theta = temperature_from_entropy(gp, es, tol)
    return hessian_vt(gp, ThermoState(es.v, theta))


def char_speed(gp: GasParams, family: int, es: EntropyState, tol: float = 1e-12):
    """Characteristic speed: -sqrt(-p_tilde_v) for family 1, + for family 3."""
    if family not in (1, 3):
        raise ValueError(f"family must be 1 or 3, got {family}")
    pv = p_tilde_v(gp, es, tol)
    if np.any(np.asarray(pv) >= 0.0):
        raise RuntimeError("char_speed: p_tilde_v >= 0, thermodynamic state is corrupt")
    root = np.sqrt(-pv)
    return -root if family == 1 else root


def reaction_rate(gp: GasParams, theta):
    """Arrhenius rate K*theta^beta*exp(-A/theta)."""
    _require_positive("theta", theta)
    theta = np.asarray(theta, dtype=float)
    out = gp.K * theta**gp.beta * np.exp(-gp.A / theta)
    return float(out) if out.ndim == 0 else out


def conductivity(gp: GasParams, st: ThermoState):
    """Thermal conductivity kappa1 + kappa2*v*theta^b."""
    return gp.kappa1 + gp.kappa2 * st.v * st.theta**gp.b


def convexity_threshold(
    gp: GasParams,
    v_range: tuple[float, float] = (0.5, 2.0),
    theta_range: tuple[float, float] = (0.5, 2.0),
    n: int = 21,
    a_hi: float = 1.0,
    rtol: float = 1e-6,
) -> float:
    """Largest radiation constant with p_tilde convex on a (v, theta) box.

    Bisects on ``a``: p_tilde(v, s) is convex everywhere on the sampled
    n-by-n grid for every a below the returned value (the ideal gas a = 0
    is always convex; convexity degrades as radiation strengthens).
    """
    from dataclasses import replace

    v = np.linspace(v_range[0], v_range[1], n)
    th = np.linspace(theta_range[0], theta_range[1], n)
    vv, tt = np.meshgrid(v, th, indexing="ij")
    grid = ThermoState(vv, tt)

    def uniformly_convex(a: float) -> bool:
        rep = hessian_vt(replace(gp, a=a), grid)
        return bool(np.all(rep.convex))

    if not uniformly_convex(0.0):
        raise RuntimeError("ideal gas reported non-convex; Hessian evaluation is corrupt")
    lo = 0.0
    hi = a_hi
    while uniformly_convex(hi):
        lo = hi
        hi *= 2.0
        if hi > 1e12:
            return lo
    while hi - lo > rtol * max(hi, 1e-300):
        mid = 0.5 * (lo + hi)
        if uniformly_convex(mid):
            lo = mid
        else:
            hi = mid
    return lo
