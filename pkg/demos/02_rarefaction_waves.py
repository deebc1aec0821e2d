"""Exact Riemann fan vs the smooth approximate wave.

Two far-field states with equal entropy and an expansive velocity jump
are joined by a 1-rarefaction and a 3-rarefaction through an intermediate
state.  The smooth approximation transports each family's characteristic
speed with the exact Burgers solution; as t grows, it collapses onto the
self-similar fan.  The script prints the wave anatomy and the measured
approach, then writes both profiles as CSV next to this file.
"""
from pathlib import Path

import numpy as np

from radgas import GasParams, RiemannData, RiemannFan, SmoothWave, WaveProfile
from radgas.cli_io import write_snapshot_csv

gp = GasParams(R=1.0, a=1e-3)
rd = RiemannData.from_far_fields(gp, 1.0, 0.0, 1.0, 1.0, 0.3, 1.0)
print(f"far fields: (v,u,theta) = (1, 0, 1) -> (1, 0.3, 1); wave strength delta = {rd.delta}")

fan = RiemannFan(gp, rd)
print(f"intermediate state: v_m = {fan.v_m:.6f}, u_m = {fan.u_m:.6f}, theta_m = {fan.theta_m:.6f}")
print(f"1-fan spans xi in [{fan.lam1_minus:.4f}, {fan.lam1_mid:.4f}]")
print(f"3-fan spans xi in [{fan.lam3_mid:.4f}, {fan.lam3_plus:.4f}]")

sw = SmoothWave(gp, rd)
xi = np.linspace(-2.0, 2.0, 2001)
Vr, Ur, Tr = fan.eval(xi)
print("\napproach to the fan on the self-similar scale:")
for t in (5.0, 50.0, 500.0):
    V, U, T = sw.eval(t, xi * t)
    sup = max(np.max(np.abs(V - Vr)), np.max(np.abs(U - Ur)), np.max(np.abs(T - Tr)))
    print(f"  t = {t:6.0f}: sup |smooth - fan| = {sup:.5f}")

class _AsFields:
    """Minimal adapter so profile arrays fit the snapshot CSV writer."""

    def __init__(self, V, U, T):
        self.v, self.u, self.theta = V, U, T
        self.z = np.zeros_like(V)


out = Path(__file__).parent
t_show = 50.0
x = xi * t_show
prof = sw.sample(t_show, x, farfield_tol=None)
write_snapshot_csv(_AsFields(prof.V, prof.U, prof.Theta), prof, out / "demo_wave_t50.csv")

fan_prof = WaveProfile(t=t_show, x=x, V=Vr, U=Ur, Theta=Tr,
                       v_m=fan.v_m, u_m=fan.u_m, theta_m=fan.theta_m)
write_snapshot_csv(_AsFields(Vr, Ur, Tr), fan_prof, out / "demo_fan_t50.csv")
print(f"\nwrote {out / 'demo_wave_t50.csv'} and {out / 'demo_fan_t50.csv'}")
