"""Shared numerical kernels.

Two primitives used throughout the package, both vectorized over numpy
arrays so that whole grids can be processed in single calls:

* a safeguarded Newton iteration on a known bracket of a monotone
  increasing function (falls back to bisection whenever a Newton step
  leaves the bracket or is otherwise unusable), and
* adaptive composite Gauss-Legendre quadrature with panel doubling.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["ConvergenceError", "newton_bisect", "gauss_legendre"]


class ConvergenceError(RuntimeError):
    """An iterative kernel failed to reach its tolerance."""


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def newton_bisect(
    f: Callable[[np.ndarray], np.ndarray] | None,
    df: Callable[[np.ndarray], np.ndarray] | None,
    lo,
    hi,
    ftol,
    x0=None,
    maxiter: int = 200,
    fdf: Callable[[np.ndarray], tuple] | None = None,
) -> np.ndarray:
    """Solve ``f(x) = 0`` elementwise for a monotone increasing ``f``.

    ``lo`` and ``hi`` must bracket the root: ``f(lo) <= 0 <= f(hi)`` up to
    ``ftol`` (asserted on entry).  Newton steps are clipped to the current
    bracket; any step that escapes it, or hits a non-finite derivative,
    degrades to bisection, so convergence is guaranteed for continuous f.
    When evaluating the residual and its slope shares expensive work, pass
    a combined ``fdf(x) -> (f, df)`` instead of the separate callables.

    Without an explicit ``x0`` the iteration starts from the secant point
    of the bracket endpoints, which is nearly exact for roots close to an
    endpoint.  Convergence criterion is the residual: ``|f(x)| <= ftol``.
    """
    if fdf is None:
        fdf = lambda x: (f(x), df(x))
    lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    ftol = np.broadcast_to(np.asarray(ftol, dtype=float), lo.shape)

    with np.errstate(all="ignore"):
        flo = np.asarray(fdf(lo)[0], dtype=float)
        fhi = np.asarray(fdf(hi)[0], dtype=float)
    if np.any(flo > ftol) or np.any(fhi < -ftol):
        raise ValueError("newton_bisect: bracket does not straddle a root of an increasing function")

    if x0 is None:
        with np.errstate(all="ignore"):
            x = lo - flo * (hi - lo) / (fhi - flo)
        x = np.where(np.isfinite(x), x, 0.5 * (lo + hi))
    else:
        x = np.array(np.broadcast_to(np.asarray(x0, dtype=float), lo.shape))
    x = np.clip(x, lo, hi)
    step_old = np.abs(hi - lo)
    for _ in range(maxiter):
        with np.errstate(all="ignore"):
            fx_raw, dfx_raw = fdf(x)
            fx = np.asarray(fx_raw, dtype=float)
            dfx = np.asarray(dfx_raw, dtype=float)
        done = np.abs(fx) <= ftol
        if done.all():
            return x
        neg = fx < 0.0
        lo = np.where(neg, x, lo)
        hi = np.where(neg, hi, x)
        with np.errstate(all="ignore"):
            xn = x - fx / dfx
            # a Newton step is kept only while it stays inside the bracket
            # and shrinks fast enough; otherwise bisect (rtsafe safeguard,
            # which breaks the two-sided oscillation of plateaued residuals)
            slow = np.abs(2.0 * fx) > np.abs(step_old * dfx)
        bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi) | slow
        xn = np.where(bad, 0.5 * (lo + hi), xn)
        step_old = np.where(done, step_old, np.abs(xn - x))
        x = np.where(done, x, xn)
    raise ConvergenceError(f"newton_bisect: no convergence after {maxiter} iterations")


def gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a,
    b,
    tol: float = 1e-10,
    max_panels: int = 4096,
) -> np.ndarray:
    """Integrate a smooth vectorized ``f`` from ``a`` to ``b`` elementwise.

    Composite 16-point Gauss-Legendre; the panel count doubles until two
    successive refinements agree to the absolute tolerance ``tol``.
    ``a`` and ``b`` may be arrays (broadcast together); the result has
    their common shape.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    shape = a.shape
    a = a.reshape(-1)
    b = b.reshape(-1)

    prev = None
    panels = 1
    while panels <= max_panels:
        # panel midpoints, shape (m, panels); half-width is uniform per row
        k = (np.arange(panels) + 0.5) / panels
        half = (b - a) / (2.0 * panels)
        mid = a[:, None] + (b - a)[:, None] * k[None, :]
        xs = mid[:, :, None] + half[:, None, None] * _GL_NODES[None, None, :]
        with np.errstate(all="ignore"):
            vals = np.asarray(f(xs), dtype=float)
        result = np.einsum("mpk,k->m", vals, _GL_WEIGHTS) * half
        if prev is not None and np.all(np.abs(result - prev) <= tol):
            return result.reshape(shape) if shape else float(result[0])
        prev = result
        panels *= 2
    raise ConvergenceError(f"gauss_legendre: no convergence with {max_panels} panels (tol={tol})")
