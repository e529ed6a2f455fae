"""Dissipation-modified quantum escape rates via the semiclassical bounce.

Reduced units ħ = m = ω₀ = 1 throughout: times in 1/ω₀, actions in ħ,
energies in ħω₀, lengths in √(ħ/(mω₀)).
"""

__version__ = "0.1.0"

from .model import (
    INFINITE,
    SHARP_WALL,
    KernelDenominator,
    ModelParams,
    QuadratureConfig,
    ValidityWarning,
    kernel_denominator,
    potential,
)
from .path import (
    BouncePath,
    EnergyLoss,
    energy_loss,
    eom_residual,
    escape_point,
    kinetic_norm,
    path_amplitude,
    reconstruct_path,
)
from .prefactor import (
    GreenRootTable,
    PrefactorResult,
    determinant_ratio,
    green_function,
    negative_eigenvalue,
    phases,
    prefactor_k,
    u_inverse,
)
from .quadrature import NumericalError
from .smooth import (
    SmoothParams,
    matching_time,
    perturbative_action,
    slope_at_escape,
    smooth_bounce,
    smooth_potential,
)
from .solver import (
    AnalyticEstimate,
    AnalyticRegime,
    BounceSolution,
    Regime,
    RootTable,
    analytic_limit,
    bare_action,
    bare_bounce_time,
    bounce_lhs,
    classical_action,
    denominator_roots,
    enhancement,
    fluctuations,
    solve_bounce_time,
)
from .specfun import aux_f, aux_g, cos_integral, sin_integral
from .sweep import SweepResult, SweepRow, SweepSpec, run_sweep, write_csv

__all__ = [
    "INFINITE",
    "SHARP_WALL",
    "AnalyticEstimate",
    "AnalyticRegime",
    "BouncePath",
    "BounceSolution",
    "EnergyLoss",
    "GreenRootTable",
    "KernelDenominator",
    "ModelParams",
    "NumericalError",
    "PrefactorResult",
    "QuadratureConfig",
    "Regime",
    "RootTable",
    "SmoothParams",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "ValidityWarning",
    "analytic_limit",
    "aux_f",
    "aux_g",
    "bare_action",
    "bare_bounce_time",
    "bounce_lhs",
    "classical_action",
    "cos_integral",
    "denominator_roots",
    "determinant_ratio",
    "energy_loss",
    "enhancement",
    "eom_residual",
    "escape_point",
    "fluctuations",
    "green_function",
    "kernel_denominator",
    "kinetic_norm",
    "matching_time",
    "negative_eigenvalue",
    "path_amplitude",
    "perturbative_action",
    "phases",
    "potential",
    "prefactor_k",
    "reconstruct_path",
    "run_sweep",
    "sin_integral",
    "slope_at_escape",
    "smooth_bounce",
    "smooth_potential",
    "solve_bounce_time",
    "u_inverse",
    "write_csv",
]
