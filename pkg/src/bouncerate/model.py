"""Dimensionless model parameters, the metastable potential, and bath kernels.

Reduced units ħ = m = ω₀ = 1 are used throughout the package: times are in
1/ω₀, actions in ħ, energies in ħω₀ and lengths in √(ħ/(mω₀)).  The well is
harmonic up to x = a, matched to an inverted-offset parabola that bottoms out
at x_m = a·s with depth Σ, and flat beyond.  The matching condition
(a - x_m)²/2 - Σ = V₀ fixes s = 1 + √(1 + Σ/V₀).

The environment consists of two Ohmic baths with a Drude cutoff f_c(ω) =
1/(1 + ω/ω_c): one coupled to position (strength γ) and one to momentum
(strength τ_p).  Both enter every observable only through the kernel
denominator

    D(ω) = ω²/(1 + τ_p ω f_c(ω)) + 1 + γ ω f_c(ω),

which is stored here both as a rational expression and as a cleared quartic
over the Drude denominators.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

#: Distinguished sigma_ratio value for the sharp-wall (Σ = ∞) regime.
INFINITE = math.inf

#: Sentinel returned by :func:`potential` beyond the wall when Σ = ∞.
SHARP_WALL = -math.inf


class ValidityWarning(UserWarning):
    """Parameters outside the large-cutoff regime the formulas assume."""


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless physical inputs plus derived barrier geometry.

    barrier_b   B = V₀/(ħω₀) > 0
    sigma_ratio Σ/V₀ > 0, or INFINITE for the sharp wall
    gamma       position-coupling γ/ω₀ ≥ 0
    tau_p       momentum-coupling τ_p·ω₀ ≥ 0
    cutoff_w    ω_c/ω₀ > 0
    """

    barrier_b: float
    sigma_ratio: float = 1.0
    gamma: float = 0.0
    tau_p: float = 0.0
    cutoff_w: float = 8000.0

    def __post_init__(self) -> None:
        if not (self.barrier_b > 0.0) or math.isinf(self.barrier_b):
            raise ValueError("barrier_b must be positive and finite")
        if math.isnan(self.sigma_ratio) or self.sigma_ratio <= 0.0:
            raise ValueError("sigma_ratio must be > 0 (or INFINITE)")
        if not (self.gamma >= 0.0 and math.isfinite(self.gamma)):
            raise ValueError("gamma must be >= 0")
        if not (self.tau_p >= 0.0 and math.isfinite(self.tau_p)):
            raise ValueError("tau_p must be >= 0")
        if not (self.cutoff_w > 0.0 and math.isfinite(self.cutoff_w)):
            raise ValueError("cutoff_w must be positive and finite")
        floor = max(1.0, self.gamma, self.tau_p)
        if self.cutoff_w < 20.0 * floor:
            warnings.warn(
                f"cutoff_w = {self.cutoff_w:g} does not dominate "
                f"max(1, gamma, tau_p) = {floor:g}; large-cutoff formulas "
                "degrade in this regime",
                ValidityWarning,
                stacklevel=2,
            )

    @property
    def is_sharp(self) -> bool:
        return math.isinf(self.sigma_ratio)

    @property
    def v0(self) -> float:
        """Barrier height in ħω₀ (numerically equal to barrier_b)."""
        return self.barrier_b

    @property
    def sigma(self) -> float:
        """Well offset Σ in ħω₀."""
        return self.sigma_ratio * self.barrier_b

    @property
    def s(self) -> float:
        """s = 1 + √(1 + Σ/V₀); satisfies s ≥ 2, with s = 2 iff Σ = 0."""
        return 1.0 + math.sqrt(1.0 + self.sigma_ratio)

    @property
    def a(self) -> float:
        """Barrier-top position a = √(2B)."""
        return math.sqrt(2.0 * self.barrier_b)

    @property
    def x_m(self) -> float:
        """Position of the flat region onset, x_m = a·s (∞ for sharp wall)."""
        return self.a * self.s


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the direct (oracle) quadrature paths."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 2000
    tail_mult: float = 50.0

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.tail_mult <= 0.0:
            raise ValueError("tail_mult must be positive")


@dataclass(frozen=True)
class KernelDenominator:
    """Cleared form of D(ω): quartic numerator over the Drude factors.

    D(ω) = poly(ω) / clearing(ω) with

        poly(ω)     = ω²(1+ω/ω_c)² + (1 + ω(1/ω_c + τ_p))(1 + ω/ω_c)
                      + γω(1 + ω(1/ω_c + τ_p))
        clearing(ω) = (1 + ω(1/ω_c + τ_p))(1 + ω/ω_c)

    Coefficients are stored highest power first (numpy polyval order).
    """

    poly: tuple[float, float, float, float, float]
    clearing: tuple[float, float, float]

    @classmethod
    def from_params(cls, p: ModelParams) -> "KernelDenominator":
        wc = p.cutoff_w
        tp, g = p.tau_p, p.gamma
        a = 1.0 / wc + tp
        b = 1.0 / wc
        poly = (
            1.0 / wc**2,
            2.0 / wc,
            1.0 + a * b + g * a,
            (a + b) + g,
            1.0,
        )
        clearing = (a * b, a + b, 1.0)
        return cls(poly=poly, clearing=clearing)

    def evaluate(self, omega):
        omega = np.asarray(omega, dtype=float)
        num = np.polyval(self.poly, omega)
        den = np.polyval(self.clearing, omega)
        out = num / den
        return out if out.ndim else float(out)


def kernel_denominator(omega, p: ModelParams):
    """D(ω) for ω ≥ 0, evaluated through the cleared polynomial form."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0):
        raise ValueError("kernel_denominator requires omega >= 0")
    return KernelDenominator.from_params(p).evaluate(omega)


def drude_cutoff(omega, p: ModelParams):
    """f_c(ω) = 1/(1 + ω/ω_c)."""
    omega = np.asarray(omega, dtype=float)
    out = 1.0 / (1.0 + omega / p.cutoff_w)
    return out if out.ndim else float(out)


def potential(x, p: ModelParams):
    """Piecewise metastable potential V(x) in reduced units.

    x²/2 below the matching point a, (x - x_m)²/2 - Σ on the barrier's far
    side, and -Σ on the flat region.  For the sharp wall (Σ = ∞) the region
    x ≥ a returns the SHARP_WALL sentinel (-∞).
    """
    x = np.asarray(x, dtype=float)
    a = p.a
    if p.is_sharp:
        out = np.where(x < a, 0.5 * x * x, SHARP_WALL)
        return out if out.ndim else float(out)
    xm, sigma = p.x_m, p.sigma
    out = np.where(
        x < a,
        0.5 * x * x,
        np.where(x < xm, 0.5 * (x - xm) ** 2 - sigma, -sigma),
    )
    return out if out.ndim else float(out)


def potential_derivative(x, p: ModelParams):
    """dV/dx for the piecewise potential (finite Σ only)."""
    if p.is_sharp:
        raise ValueError("potential_derivative is undefined for the sharp wall")
    x = np.asarray(x, dtype=float)
    out = np.where(x < p.a, x, np.where(x < p.x_m, x - p.x_m, 0.0))
    return out if out.ndim else float(out)
