"""Rarefaction wave machinery.

The large-time behavior of the viscous system with unequal far fields is
organized by the Riemann problem of the associated inviscid equations in
(v, u, s) variables.  For far-field data connected by a 1-rarefaction and
a 3-rarefaction through a single intermediate state (v_m, u_m), the weak
solution is a pair of self-similar fans along which the entropy is the
shared constant s_bar and

    u = u_minus + int_{v_minus}^{v} sqrt(-dp_tilde/dxi (xi, s_bar)) dxi

along the 1-curve (minus the analogous integral along the 3-curve).

Smooth approximations to the fans are built by transporting a smoothed
Heaviside profile with the inviscid Burgers equation: each family's
characteristic speed field omega solves Burgers exactly (method of
characteristics), and inverting lambda_family(V, s_bar) = omega recovers
the specific volume profile.  Evaluation is at time t + 1 so that the
profile is smooth from t = 0 on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import thermo
from .numerics import gauss_legendre, newton_bisect
from .thermo import EntropyState, GasParams, ThermoState

__all__ = [
    "NotARarefactionError",
    "BurgersSpec",
    "RiemannData",
    "WaveProfile",
    "burgers_initial",
    "burgers_eval",
    "invert_char_speed",
    "rarefaction_curve_u",
    "intermediate_state",
    "RiemannFan",
    "riemann_fan_eval",
    "SmoothWave",
    "smooth_wave_eval",
]

QUAD_TOL = 1e-10


class NotARarefactionError(ValueError):
    """Far-field data does not lie in the composite rarefaction regime."""


@dataclass(frozen=True)
class BurgersSpec:
    """Data for one family's Burgers problem.

    The initial profile ramps from ``w_minus`` to ``w_plus`` through the
    normalized kernel (1 + y^2)^(-q); ``eps`` sets the ramp steepness.
    ``Kq`` normalizes the kernel integral over [0, inf) to one; it has the
    closed form 1 / (sqrt(pi)/2 * Gamma(q - 1/2)/Gamma(q)).  Equal far
    speeds give the degenerate constant solution.
    """

    w_minus: float
    w_plus: float
    eps: float
    q: float = 2.0

    def __post_init__(self):
        if not self.w_minus <= self.w_plus:
            raise ValueError(f"need w_minus <= w_plus, got {self.w_minus} > {self.w_plus}")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not self.q > 1.5:
            raise ValueError(f"q must exceed 3/2, got {self.q}")

    @property
    def Kq(self) -> float:
        return 1.0 / (math.sqrt(math.pi) / 2.0 * math.gamma(self.q - 0.5) / math.gamma(self.q))


def _kernel_integral(q: float, z):
    """int_0^z (1 + y^2)^(-q) dy, elementwise, odd in z."""
    z = np.asarray(z, dtype=float)
    if q == 2.0:
        out = 0.5 * (z / (1.0 + z * z) + np.arctan(z))
    else:
        # substitute y = tan(phi): the integrand becomes cos(phi)^(2q-2)
        # on the compact interval [0, arctan|z|], uniform panels converge
        phi = np.arctan(np.abs(z))
        out = np.sign(z) * gauss_legendre(lambda p: np.cos(p) ** (2.0 * q - 2.0), 0.0, phi, QUAD_TOL)
    return float(out) if out.ndim == 0 else out


def burgers_initial(spec: BurgersSpec, x):
    """The smoothed two-state initial profile w0(x)."""
    mid = 0.5 * (spec.w_plus + spec.w_minus)
    amp = 0.5 * (spec.w_plus - spec.w_minus)
    if amp == 0.0:
        return mid if np.ndim(x) == 0 else np.full(np.shape(x), mid)
    return mid + amp * spec.Kq * _kernel_integral(spec.q, spec.eps * np.asarray(x, dtype=float))


def _burgers_initial_x(spec: BurgersSpec, x):
    amp = 0.5 * (spec.w_plus - spec.w_minus)
    z = spec.eps * np.asarray(x, dtype=float)
    return amp * spec.Kq * spec.eps * (1.0 + z * z) ** (-spec.q)


def burgers_eval(spec: BurgersSpec, t: float, x, tol=None):
    """Exact Burgers solution w(t, x) by the method of characteristics.

    Solves x0 + t*w0(x0) = x for the characteristic foot x0; the map is
    strictly increasing in x0 because w0 is, so the root is unique and is
    bracketed by [x - t*w_plus, x - t*w_minus].
    """
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if spec.w_plus == spec.w_minus:
        w = np.full_like(x, spec.w_minus)
        return float(w[0]) if scalar else w
    if t == 0.0:
        w = burgers_initial(spec, x)
        return float(np.atleast_1d(w)[0]) if scalar else w

    ftol = 1e-12 * (1.0 + np.abs(x)) if tol is None else np.broadcast_to(float(tol), x.shape)

    def g(x0):
        return x0 + t * burgers_initial(spec, x0) - x

    def dg(x0):
        return 1.0 + t * _burgers_initial_x(spec, x0)

    x0 = newton_bisect(g, dg, x - t * spec.w_plus, x - t * spec.w_minus, ftol, x0=x - t * burgers_initial(spec, x))
    w = np.asarray(burgers_initial(spec, x0))
    return float(w[0]) if scalar else w


@dataclass(frozen=True)
class RiemannData:
    """Far-field endpoint states with shared entropy and wave strength.

    Build through :meth:`from_far_fields`, which derives ``s_bar`` and
    ``delta`` and verifies that the data admits a composite rarefaction
    solution (equal far-field entropies, intermediate state exists and is
    admissible).
    """

    v_minus: float
    u_minus: float
    theta_minus: float
    v_plus: float
    u_plus: float
    theta_plus: float
    s_bar: float
    delta: float

    @classmethod
    def from_far_fields(
        cls,
        gp: GasParams,
        v_minus: float,
        u_minus: float,
        theta_minus: float,
        v_plus: float,
        u_plus: float,
        theta_plus: float,
        entropy_tol: float = 1e-8,
    ) -> "RiemannData":
        for name, val in (("v_minus", v_minus), ("theta_minus", theta_minus),
                          ("v_plus", v_plus), ("theta_plus", theta_plus)):
            if not (np.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val!r}")
        s_minus = thermo.entropy(gp, ThermoState(v_minus, theta_minus))
        s_plus = thermo.entropy(gp, ThermoState(v_plus, theta_plus))
        if abs(s_plus - s_minus) > entropy_tol:
            raise ValueError(
                "far fields must share one entropy (s_plus = s_minus = s_bar): "
                f"got s_minus={s_minus!r}, s_plus={s_plus!r}, |difference| "
                f"{abs(s_plus - s_minus):.3e} > entropy_tol={entropy_tol:g}"
            )
        rd = cls(
            v_minus=float(v_minus),
            u_minus=float(u_minus),
            theta_minus=float(theta_minus),
            v_plus=float(v_plus),
            u_plus=float(u_plus),
            theta_plus=float(theta_plus),
            s_bar=0.5 * (s_minus + s_plus),
            delta=abs(v_minus - v_plus) + abs(u_minus - u_plus),
        )
        intermediate_state(gp, rd)  # raises NotARarefactionError on bad data
        return rd


def _theta_on_isentrope(gp: GasParams, s_bar: float, v):
    v = np.asarray(v, dtype=float)
    s = np.broadcast_to(np.asarray(s_bar, dtype=float), v.shape)
    return thermo._theta_from_entropy_arrays(gp, v, s, 1e-12)


def _fan_speed(gp: GasParams, s_bar: float):
    """Vectorized sqrt(-dp_tilde/dv (v, s_bar)), the positive wave speed."""

    def c(v):
        v = np.asarray(v, dtype=float)
        theta = _theta_on_isentrope(gp, s_bar, v)
        p_v = -gp.R * theta / v**2
        p_th = gp.R / v + 4.0 * gp.a * theta**3 / 3.0
        s_th = gp.Cv / theta + 4.0 * gp.a * v * theta**2
        return np.sqrt(p_th * p_th / s_th - p_v)

    return c


def _fan_speed_with_slope(gp: GasParams, s_bar: float):
    """Combined (c, dc/dv) with a single entropy inversion per call."""

    def c_dc(v):
        v = np.asarray(v, dtype=float)
        theta = _theta_on_isentrope(gp, s_bar, v)
        st = ThermoState(v, theta)
        c = np.sqrt(-thermo.p_tilde_v_vt(gp, st))
        return c, -thermo.hessian_vt(gp, st).p_vv / (2.0 * c)

    return c_dc


def invert_char_speed(gp: GasParams, family: int, omega, s_bar: float, tol: float = 1e-12, bracket=None):
    """Solve char_speed(family, (v, s_bar)) = omega for the specific volume.

    lambda_1 = -sqrt(-p_tilde_v) increases with v and lambda_3 decreases,
    each spanning all of (-inf, 0) resp. (0, inf), so any omega of the
    right sign is attainable and the root is unique.  Monotonicity is
    asserted numerically at the bracket endpoints.
    """
    if family not in (1, 3):
        raise ValueError(f"family must be 1 or 3, got {family}")
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    omega = np.atleast_1d(omega)
    if family == 3 and np.any(omega <= 0.0):
        raise ValueError("family-3 characteristic speed is positive; omega out of range")
    if family == 1 and np.any(omega >= 0.0):
        raise ValueError("family-1 characteristic speed is negative; omega out of range")

    c_dc = _fan_speed_with_slope(gp, s_bar)

    # both families reduce to a residual increasing in v: lambda_1 = -c
    # rises with v, lambda_3 = c falls with v
    def fdf(v):
        c, dc = c_dc(v)
        resid = (-c - omega) if family == 1 else (omega - c)
        return resid, -dc

    f = lambda v: fdf(v)[0]

    if bracket is None:
        lo = np.full_like(omega, 1.0)
        hi = np.full_like(omega, 1.0)
        with np.errstate(all="ignore"):
            for _ in range(64):
                mask = f(lo) > 0.0
                if not mask.any():
                    break
                if np.any(lo[mask] <= 1e-9):
                    raise ValueError("invert_char_speed: omega outside the attainable range")
                lo = np.where(mask, lo / 4.0, lo)
            for _ in range(64):
                mask = f(hi) < 0.0
                if not mask.any():
                    break
                if np.any(hi[mask] >= 1e9):
                    raise ValueError("invert_char_speed: omega outside the attainable range")
                hi = np.where(mask, hi * 4.0, hi)
    else:
        lo = np.full_like(omega, min(bracket))
        hi = np.full_like(omega, max(bracket))

    ftol = tol * (1.0 + np.abs(omega))
    v = newton_bisect(None, None, lo, hi, ftol, fdf=fdf)
    return float(v[0]) if scalar else v


def rarefaction_curve_u(gp: GasParams, family: int, anchor: tuple[float, float], s_bar: float, v, tol: float = QUAD_TOL):
    """Velocity along the rarefaction integral curve through ``anchor``.

    Family 1: u0 + int_{v0}^{v} sqrt(-dp_tilde/dxi) dxi; family 3 carries
    the opposite sign.  Quadrature is adaptive composite Gauss-Legendre.
    """
    if family not in (1, 3):
        raise ValueError(f"family must be 1 or 3, got {family}")
    v0, u0 = anchor
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0.0):
        raise ValueError("specific volume on the curve must be positive")
    integral = gauss_legendre(_fan_speed(gp, s_bar), v0, v, tol)
    return u0 + integral if family == 1 else u0 - integral


def intermediate_state(gp: GasParams, rd: RiemannData, tol: float = 1e-12) -> tuple[float, float, float]:
    """The constant state joining the 1-curve from the left far field to
    the 3-curve into the right far field.

    v_m is the root of the strictly increasing

        g(v) = u_minus - u_plus + int_{v_minus}^{v} c + int_{v_plus}^{v} c,

    c = sqrt(-dp_tilde/dv (., s_bar)); the rarefaction ordering
    u_minus <= u_m <= u_plus is then verified.
    """
    c = _fan_speed(gp, rd.s_bar)
    lo = max(rd.v_minus, rd.v_plus)

    def g(v):
        return (
            rd.u_minus
            - rd.u_plus
            + gauss_legendre(c, rd.v_minus, v, QUAD_TOL)
            + gauss_legendre(c, rd.v_plus, v, QUAD_TOL)
        )

    ftol = tol * (1.0 + abs(rd.u_minus) + abs(rd.u_plus))
    g_lo = float(g(np.asarray(lo)))
    if g_lo > ftol:
        raise NotARarefactionError(
            "far-field data is not a composite rarefaction configuration "
            f"(compressive velocity jump; residual {g_lo:.3e} at v={lo:g})"
        )
    hi = lo
    for _ in range(64):
        if float(g(np.asarray(hi))) >= 0.0:
            break
        hi *= 2.0
        if hi > 1e12:
            raise NotARarefactionError("no intermediate specific volume below 1e12; data is not a rarefaction pair")

    v_m = newton_bisect(lambda v: g(v), lambda v: 2.0 * c(v), np.asarray([lo]), np.asarray([hi]), np.asarray([ftol]))
    v_m = float(v_m[0])
    u_m = float(rarefaction_curve_u(gp, 1, (rd.v_minus, rd.u_minus), rd.s_bar, v_m))
    slack = 1e-9 * (1.0 + rd.delta)
    if not (u_m >= rd.u_minus - slack and rd.u_plus >= u_m - slack):
        raise NotARarefactionError(
            f"intermediate state inadmissible: need u_minus <= u_m <= u_plus, got {rd.u_minus} / {u_m} / {rd.u_plus}"
        )
    theta_m = float(thermo.temperature_from_entropy(gp, EntropyState(v_m, rd.s_bar)))
    return v_m, u_m, theta_m


class RiemannFan:
    """Exact self-similar solution (V, U, Theta)(xi) of the Riemann problem.

    Precomputes the intermediate state and the four fan-edge speeds, then
    evaluates vectorized in the similarity variable xi = x/t.
    """

    def __init__(self, gp: GasParams, rd: RiemannData):
        self.gp = gp
        self.rd = rd
        self.v_m, self.u_m, self.theta_m = intermediate_state(gp, rd)
        s = rd.s_bar
        c = _fan_speed(gp, s)
        self.lam1_minus = -float(c(np.asarray(rd.v_minus)))
        self.lam1_mid = -float(c(np.asarray(self.v_m)))
        self.lam3_mid = float(c(np.asarray(self.v_m)))
        self.lam3_plus = float(c(np.asarray(rd.v_plus)))

    def eval(self, xi):
        gp, rd = self.gp, self.rd
        xi = np.asarray(xi, dtype=float)
        scalar = xi.ndim == 0
        xi = np.atleast_1d(xi)

        V1 = np.where(xi <= self.lam1_minus, rd.v_minus, self.v_m)
        in1 = (xi > self.lam1_minus) & (xi < self.lam1_mid)
        if in1.any():
            V1[in1] = invert_char_speed(gp, 1, xi[in1], rd.s_bar, bracket=(rd.v_minus, self.v_m))
        U1 = rarefaction_curve_u(gp, 1, (rd.v_minus, rd.u_minus), rd.s_bar, V1)

        V3 = np.where(xi <= self.lam3_mid, self.v_m, rd.v_plus)
        in3 = (xi > self.lam3_mid) & (xi < self.lam3_plus)
        if in3.any():
            V3[in3] = invert_char_speed(gp, 3, xi[in3], rd.s_bar, bracket=(rd.v_plus, self.v_m))
        U3 = rarefaction_curve_u(gp, 3, (self.v_m, self.u_m), rd.s_bar, V3)

        V = V1 + V3 - self.v_m
        U = U1 + U3 - self.u_m
        Theta = _theta_on_isentrope(gp, rd.s_bar, V)
        if scalar:
            return float(V[0]), float(U[0]), float(Theta[0])
        return V, U, Theta


def riemann_fan_eval(gp: GasParams, rd: RiemannData, xi):
    """One-shot evaluation of the exact fan at xi = x/t."""
    return RiemannFan(gp, rd).eval(xi)


@dataclass(frozen=True)
class WaveProfile:
    """The smooth approximate wave sampled on a grid at one instant."""

    t: float
    x: np.ndarray
    V: np.ndarray
    U: np.ndarray
    Theta: np.ndarray
    v_m: float
    u_m: float
    theta_m: float

    def __post_init__(self):
        if not (np.all(self.V > 0.0) and np.all(self.Theta > 0.0)):
            raise ValueError("wave profile left the physical region (V > 0, Theta > 0)")


class SmoothWave:
    """Smooth approximate composite rarefaction wave.

    Each family's speed field solves the Burgers problem with far speeds
    equal to the characteristic speeds at the family's endpoint states;
    the profile is recovered by inverting the speed map at fixed entropy.
    Defaults follow the standard choice eps = delta (wave strength) and
    q = 2; both are exposed for experiments.  All components are
    evaluated at time t + 1.
    """

    def __init__(self, gp: GasParams, rd: RiemannData, eps: float | None = None, q: float = 2.0):
        self.gp = gp
        self.rd = rd
        self.v_m, self.u_m, self.theta_m = intermediate_state(gp, rd)
        if eps is None:
            eps = rd.delta if rd.delta > 0.0 else 1.0  # degenerate data: any eps, profile is constant
        c = _fan_speed(gp, rd.s_bar)
        lam_minus = float(c(np.asarray(rd.v_minus)))
        lam_mid = float(c(np.asarray(self.v_m)))
        lam_plus = float(c(np.asarray(rd.v_plus)))
        self.spec1 = BurgersSpec(w_minus=-lam_minus, w_plus=-lam_mid, eps=eps, q=q)
        self.spec3 = BurgersSpec(w_minus=lam_mid, w_plus=lam_plus, eps=eps, q=q)

    def eval(self, t: float, x):
        """(V, U, Theta) at time t (profile time t + 1), vectorized in x."""
        gp, rd = self.gp, self.rd
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        tau = t + 1.0

        if self.spec1.w_minus == self.spec1.w_plus:
            V1 = np.full_like(x, rd.v_minus)
            U1 = np.full_like(x, rd.u_minus)
        else:
            w1 = burgers_eval(self.spec1, tau, x)
            V1 = invert_char_speed(gp, 1, w1, rd.s_bar, bracket=(rd.v_minus, self.v_m))
            U1 = rarefaction_curve_u(gp, 1, (rd.v_minus, rd.u_minus), rd.s_bar, V1)
        if self.spec3.w_minus == self.spec3.w_plus:
            V3 = np.full_like(x, self.v_m)
            U3 = np.full_like(x, self.u_m)
        else:
            w3 = burgers_eval(self.spec3, tau, x)
            V3 = invert_char_speed(gp, 3, w3, rd.s_bar, bracket=(rd.v_plus, self.v_m))
            U3 = rarefaction_curve_u(gp, 3, (self.v_m, self.u_m), rd.s_bar, V3)

        V = V1 + V3 - self.v_m
        U = U1 + U3 - self.u_m
        Theta = _theta_on_isentrope(gp, rd.s_bar, V)
        if scalar:
            return float(V[0]), float(U[0]), float(Theta[0])
        return V, U, Theta

    def sample(self, t: float, x, farfield_tol: float | None = 1e-3) -> WaveProfile:
        """Sample the profile on a grid, with far-field checks at the edges.

        ``farfield_tol`` bounds |V - v_far| and |U - u_far| at the first
        and last grid points, scaled by max(1, delta); pass None for grids
        that do not reach the far field.
        """
        x = np.asarray(x, dtype=float)
        V, U, Theta = self.eval(t, x)
        if farfield_tol is not None:
            tol = farfield_tol * max(1.0, self.rd.delta)
            gaps = (
                abs(V[0] - self.rd.v_minus),
                abs(U[0] - self.rd.u_minus),
                abs(V[-1] - self.rd.v_plus),
                abs(U[-1] - self.rd.u_plus),
            )
            if max(gaps) > tol:
                raise ValueError(
                    f"grid edges miss the far fields by {max(gaps):.3e} > {tol:.3e}; widen the domain"
                )
        return WaveProfile(
            t=float(t), x=x, V=V, U=U, Theta=Theta, v_m=self.v_m, u_m=self.u_m, theta_m=self.theta_m
        )


def smooth_wave_eval(gp: GasParams, rd: RiemannData, t: float, x, eps: float | None = None, q: float = 2.0):
    """One-shot evaluation of the smooth approximate wave at (t, x)."""
    return SmoothWave(gp, rd, eps=eps, q=q).eval(t, x)
