"""radgas: a numerical laboratory for 1D viscous radiative reactive gas flow.

Subpackages by concern:

* :mod:`radgas.thermo` - constitutive laws, entropy inversion, the exact
  Hessian of the isentropic pressure, convexity certification;
* :mod:`radgas.waves` - exact Burgers transport, rarefaction curves,
  intermediate states, the exact Riemann fan, smooth approximate waves;
* :mod:`radgas.solver` - explicit finite-difference time integration of
  the full viscous reactive system on a truncated domain;
* :mod:`radgas.diagnostics` - relative entropy, dissipation, sup
  distances to the fan, pointwise bounds;
* :mod:`radgas.cli_io` - JSON scenario configs, CSV emission, CLI verbs.
"""
from .diagnostics import DiagnosticsRecord
from .solver import BlowUpError, FieldSnapshot, Grid1D, PerturbationSpec, ScenarioError, SimulationState
from .thermo import EntropyState, GasParams, HessianReport, ThermoState
from .waves import BurgersSpec, NotARarefactionError, RiemannData, RiemannFan, SmoothWave, WaveProfile

__all__ = [
    "GasParams",
    "ThermoState",
    "EntropyState",
    "HessianReport",
    "BurgersSpec",
    "RiemannData",
    "RiemannFan",
    "SmoothWave",
    "WaveProfile",
    "NotARarefactionError",
    "Grid1D",
    "FieldSnapshot",
    "PerturbationSpec",
    "SimulationState",
    "ScenarioError",
    "BlowUpError",
    "DiagnosticsRecord",
]

__version__ = "0.1.0"
