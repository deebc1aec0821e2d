"""Shared test oracles.

The finite-difference Hessian oracle runs in 30-digit mpmath: float64
second differences at the pinned step 1e-5 would lose all but ~4 digits
to cancellation, which is coarser than the tolerances under test.  The
oracle path (mpmath findroot inversion + high-precision arithmetic) is
fully independent of the package's numpy kernels.
"""
from mpmath import findroot, log, mp, mpf


def mp_p_tilde(gp, v, s):
    mp.dps = 30
    R, Cv, a = mpf(repr(gp.R)), mpf(repr(gp.Cv)), mpf(repr(gp.a))
    v = v if isinstance(v, mpf) else mpf(repr(float(v)))
    s = s if isinstance(s, mpf) else mpf(repr(float(s)))
    theta = findroot(lambda th: Cv * log(th) + mpf(4) / 3 * a * v * th**3 + R * log(v) - s, mpf(1))
    return R * theta / v + a * theta**4 / 3


def fd_hessian_oracle(gp, v: float, theta: float, h: float = 1e-5):
    """(p_vv, p_vs, p_ss) of p_tilde by central differences at step h."""
    mp.dps = 30
    R, Cv, a = mpf(repr(gp.R)), mpf(repr(gp.Cv)), mpf(repr(gp.a))
    vm, tm = mpf(repr(v)), mpf(repr(theta))
    s = Cv * log(tm) + mpf(4) / 3 * a * vm * tm**3 + R * log(vm)
    h = mpf(repr(h))
    f = lambda vv, ss: mp_p_tilde(gp, vv, ss)
    p_vv = (f(vm + h, s) - 2 * f(vm, s) + f(vm - h, s)) / h**2
    p_ss = (f(vm, s + h) - 2 * f(vm, s) + f(vm, s - h)) / h**2
    p_vs = (f(vm + h, s + h) - f(vm + h, s - h) - f(vm - h, s + h) + f(vm - h, s - h)) / (4 * h**2)
    return float(p_vv), float(p_vs), float(p_ss)
