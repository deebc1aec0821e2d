"""Tour of the constitutive laws and the convexity question.

The radiative gas closes the system with p = R*theta/v + a*theta^4/3 and
e = Cv*theta + a*v*theta^4.  In (v, s) variables the isentropic pressure
p_tilde is convex for the ideal gas (a = 0) but not in general: this
script finds, by bisection, how much radiation a compact state region
tolerates before convexity is lost, and prints the Hessian at a few
states on the way.
"""
import numpy as np

from radgas import EntropyState, GasParams, ThermoState
from radgas.thermo import (
    char_speed,
    convexity_threshold,
    entropy,
    hessian_vt,
    p_tilde,
    pressure,
    temperature_from_entropy,
)

gp = GasParams(R=1.0, a=0.05, mu=0.5, kappa1=1.0, kappa2=0.5, b=3.0, d=0.5)
print(f"gas: R={gp.R}, Cv={gp.Cv} (radiative default 1.5*R), a={gp.a}")

st = ThermoState(1.2, 0.9)
s = entropy(gp, st)
print(f"\nstate (v, theta) = ({st.v}, {st.theta}):")
print(f"  pressure        {pressure(gp, st):.6f}")
print(f"  entropy         {s:.6f}")
print(f"  theta recovered {temperature_from_entropy(gp, EntropyState(st.v, s)):.12f}")
print(f"  p_tilde(v, s)   {p_tilde(gp, EntropyState(st.v, s)):.6f}  (same state, (v, s) chart)")
print(f"  lambda_3        {char_speed(gp, 3, EntropyState(st.v, s)):.6f}")

print("\nHessian of p_tilde across a temperature sweep (a = 0.05):")
print(f"{'theta':>7} {'p_vv':>12} {'p_ss':>12} {'det':>13} {'convex':>7}")
for theta in (0.5, 1.0, 1.5, 2.0, 3.0):
    rep = hessian_vt(gp, ThermoState(1.0, theta))
    print(f"{theta:7.2f} {rep.p_vv:12.5f} {rep.p_ss:12.6f} {rep.det:13.4e} {str(rep.convex):>7}")

a_star = convexity_threshold(GasParams(R=1.0), v_range=(0.5, 2.0), theta_range=(0.5, 2.0), n=21)
print(f"\nlargest uniformly convex radiation constant on [0.5,2]^2: a* = {a_star:.6e}")
for a in (0.5 * a_star, 2.0 * a_star):
    gp_a = GasParams(R=1.0, a=a)
    vv, tt = np.meshgrid(np.linspace(0.5, 2, 21), np.linspace(0.5, 2, 21))
    frac = float(np.mean(hessian_vt(gp_a, ThermoState(vv, tt)).convex))
    print(f"  a = {a:8.2e}: convex at {100 * frac:5.1f}% of grid states")
