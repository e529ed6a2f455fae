"""Fluctuation prefactor: determinant ratio, negative eigenvalue, Jacobian.

Fluctuations around the bounce see the harmonic well plus two attractive
delta wells at the barrier-crossing times ±ξ_B/2, of strength
U = x_m/|ẋ_cl(ξ_B/2)| (reduced units m = ω₀ = 1).  Everything here derives
from the free dissipative Green function

    G_λ(τ) = (1/π) ∫₀^∞ dω cos(ωτ) / (ω²/(1+τ_p ω f_c(ω)) + 1 + γω - λ - i0),

whose cleared denominator is a cubic in x = ω/ω_c.  Above threshold (λ > 1)
the cubic has exactly one positive real root: the on-shell pole contributes
the imaginary part and a principal-value sine term; the remaining roots enter
through the auxiliary function g.  The even/odd scattering channels

    n_λ^± = U⁻¹ - G_λ(0) ± G_λ(ξ_B)

carry the phases φ^± = arg(n^±) that build the determinant ratio, the zero
mode sits at n⁺(0) = 0 exactly, and the breathing-mode (negative) eigenvalue
solves n⁻(-|λ₁|) = 0.

The position bath enters without its Drude cutoff here (it is irrelevant at
large ω_c), exactly as in the kernel this module inherits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize
from scipy.integrate import quad

from .model import ModelParams, QuadratureConfig
from .path import kinetic_norm
from .solver import bare_action, bare_bounce_time, solve_bounce_time
from .specfun import aux_g

_DEGENERACY_TOL = 1e-9
_ON_SHELL_IMAG = 1e-9


@dataclass(frozen=True)
class GreenRootTable:
    """Cubic roots and partial-fraction weights for one eigenvalue λ."""

    lam: float
    p_sq: float                 # p² = λ - 1
    alpha: float
    chi: float
    roots: tuple[complex, complex, complex]
    weights: tuple[complex, complex, complex]
    on_shell: int | None        # index of the positive real (pole) root


@dataclass(frozen=True)
class PrefactorResult:
    ln_r: float
    ln_r_bare: float
    lambda1_abs: float
    lambda1_bare: float
    a_norm: float               # A_τ₀ = 1/√(∫ẋ² dτ)
    a_norm_bare: float
    k_ratio: float

    @property
    def r_ratio(self) -> float:
        return math.exp(self.ln_r - self.ln_r_bare)

    @property
    def a_ratio(self) -> float:
        return self.a_norm / self.a_norm_bare

    @property
    def lambda_ratio(self) -> float:
        return self.lambda1_abs / self.lambda1_bare


def green_root_table(p: ModelParams, lam: float) -> GreenRootTable:
    """Roots of the cleared Green-function cubic at eigenvalue λ."""
    wc = p.cutoff_w
    one_plus = 1.0 + p.tau_p * wc
    omega2 = 1.0 / wc**2
    p_sq = lam - 1.0
    alpha = p.gamma / wc + p.tau_p * p.gamma + 1.0
    chi = -p_sq * omega2 * one_plus + p.gamma / wc
    roots = np.roots([1.0, alpha, chi, -p_sq * omega2])

    scale = max(np.max(np.abs(roots)), 1e-300)
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(roots[i] - roots[j]) < _DEGENERACY_TOL * scale:
                warnings.warn(
                    "degenerate Green-function cubic roots; using perturbed roots",
                    RuntimeWarning,
                    stacklevel=2,
                )
                gap = 1e-6 * scale
                roots[i] += gap
                roots[j] -= gap

    weights = []
    for i in range(3):
        r = roots[i]
        denom = 1.0
        for j in range(3):
            if j != i:
                denom *= r - roots[j]
        weights.append((1.0 + one_plus * r) / denom)

    on_shell = None
    if lam > 1.0:
        cands = [
            i
            for i, r in enumerate(roots)
            if r.real > 0.0 and abs(r.imag) <= _ON_SHELL_IMAG * max(abs(r), 1e-12)
        ]
        if len(cands) != 1:
            raise ArithmeticError(
                f"expected one on-shell root above threshold, found {len(cands)}"
            )
        on_shell = cands[0]
    return GreenRootTable(
        lam=lam, p_sq=p_sq, alpha=alpha, chi=chi,
        roots=tuple(roots), weights=tuple(weights), on_shell=on_shell,
    )


def green_function(p: ModelParams, lam: float, tau: float) -> complex:
    """G_λ(τ) via the partial-fraction expansion over the cubic roots.

    Real for λ < 1 (no pole on the contour); for λ > 1 the on-shell root adds
    i·w₁·cos(ν₁ω_cτ)/ω_c and turns the cosine integral into its principal
    value.  τ may be 0 (regularized log form) but the result diverges only at
    the λ → 1 threshold."""
    table = green_root_table(p, lam)
    return _green_from_table(p, table, abs(tau))


def _green_from_table(p: ModelParams, table: GreenRootTable, tau: float) -> complex:
    wc = p.cutoff_w
    k = tau * wc
    roots = np.asarray(table.roots)
    weights = np.asarray(table.weights)
    # ν_i = -r_i off shell; the on-shell pole root keeps its positive value.
    nu = -roots
    if table.on_shell is not None:
        nu[table.on_shell] = roots[table.on_shell].real
    if k > 0.0:
        total = (weights * aux_g(k * nu)).sum()
        if table.on_shell is not None:
            nu1 = roots[table.on_shell].real
            total -= weights[table.on_shell] * math.pi * math.sin(k * nu1)
    else:
        total = -(weights * np.log(nu)).sum()
    g_val = total / (math.pi * wc)
    if table.on_shell is not None:
        w_on = table.weights[table.on_shell].real
        nu1 = table.roots[table.on_shell].real
        g_val += 1j * w_on * math.cos(k * nu1) / wc
    return complex(g_val)


# ---------------------------------------------------------------------------
# Delta-well strength and scattering channels
# ---------------------------------------------------------------------------

def u_inverse(
    p: ModelParams,
    xi_b: float,
    convention: str = "matching_amplitude",
) -> float:
    """U⁻¹ = |ẋ_cl(ξ_B/2)| / (mω₀² x_m) from the λ = 0 kernel roots.

    convention "matching_amplitude" uses the delta-well strength mω₀²·x_m
    (the jump of V′ at the matching point); "paper_sum" uses mω₀²·(a + x_m)
    instead.  Only the former satisfies the zero-mode identity n⁺(0) = 0."""
    table = green_root_table(p, 0.0)
    wc = p.cutoff_w
    k = xi_b * wc
    total = 0.0 + 0.0j
    for r, w in zip(table.roots, table.weights):
        nu = -r
        total += w * (np.log(nu) + aux_g(k * nu))
    val = float((-total / (math.pi * wc)).real)
    if convention == "matching_amplitude":
        return val
    if convention == "paper_sum":
        return val * p.x_m / (p.a + p.x_m)
    raise ValueError(f"unknown convention {convention!r}")


def velocity_at_crossing(p: ModelParams, xi_b: float) -> float:
    """|ẋ_cl(ξ_B/2)| = mω₀² x_m · U⁻¹ for this module's kernel."""
    return p.x_m * u_inverse(p, xi_b)


def channel_amplitudes(p: ModelParams, lam: float, xi_b: float, u_inv: float | None = None) -> tuple[complex, complex]:
    """(n⁺, n⁻) with n^± = U⁻¹ - G_λ(0) ± G_λ(ξ_B)."""
    if u_inv is None:
        u_inv = u_inverse(p, xi_b)
    table = green_root_table(p, lam)
    g0 = _green_from_table(p, table, 0.0)
    gx = _green_from_table(p, table, xi_b)
    return u_inv - g0 + gx, u_inv - g0 - gx


def _clamped_arg(n: complex) -> float:
    """arg(n) on the branch [-π, 0]; Im(n) ≤ 0 up to rounding by construction."""
    re, im = n.real, n.imag
    if im > 0.0:
        im = 0.0
    if im == 0.0:
        return 0.0 if re >= 0.0 else -math.pi
    return math.atan2(im, re)


def phases(
    p: ModelParams,
    lam: float,
    xi_b: float,
    u_inv: float | None = None,
) -> tuple[float, float]:
    """Scattering phases φ^± = arg(n^±) for λ ≥ mω₀² = 1.

    Continuous in λ: both channels live in the closed lower half-plane, so the
    [-π, 0] branch needs no unwrapping.  φ^±(1⁺) → -π (log-divergent real
    part) and φ^± → 0 as λ → ∞."""
    if lam < 1.0:
        raise ValueError("phases are defined for lam >= m*omega0^2 = 1")
    if lam == 1.0:
        # Threshold limits.  For γ > 0 both channels diverge logarithmically
        # along the negative real axis, φ± → -π.  For γ = 0 the even channel
        # instead diverges along -i∞ (bare-like i/2q behavior), φ⁻ → -π/2.
        return (-math.pi, -math.pi if p.gamma > 0.0 else -math.pi / 2.0)
    n_plus, n_minus = channel_amplitudes(p, lam, xi_b, u_inv)
    return _clamped_arg(n_plus), _clamped_arg(n_minus)


def determinant_ratio(
    p: ModelParams,
    xi_b: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """ln R = ln(mω₀²) - (1/2π)∫_{mω₀²}^∞ dλ (φ⁺ + φ⁻)/λ, in reduced units
    (the boundary term ln(mω₀²) vanishes).

    The substitution λ = 1 + u² concentrates nodes at threshold; the far tail
    uses v = 1/√λ, under which the ~λ^{-1/2} phase decay becomes linear."""
    cfg = cfg or QuadratureConfig()
    u_inv = u_inverse(p, xi_b)

    def phase_sum(lam: float) -> float:
        ph = phases(p, lam, xi_b, u_inv)
        return ph[0] + ph[1]

    with warnings.catch_warnings():
        # The (1 ∓ cos) channel oscillations mostly cancel in φ⁺ + φ⁻; the
        # tiny residual wiggle makes QUADPACK grumble long after the result
        # is converged to well below the tolerances asserted anywhere.
        from scipy.integrate import IntegrationWarning

        warnings.simplefilter("ignore", IntegrationWarning)
        near, _ = quad(
            lambda u: 2.0 * u * phase_sum(1.0 + u * u) / (1.0 + u * u),
            0.0, 1.0, limit=400, epsabs=1e-9, epsrel=1e-8,
        )
        far, _ = quad(
            lambda v: 2.0 * phase_sum(1.0 / (v * v)) / v,
            1e-9, 1.0 / math.sqrt(2.0), limit=400, epsabs=1e-9, epsrel=1e-8,
        )
    return -(near + far) / (2.0 * math.pi)


def negative_eigenvalue(
    p: ModelParams,
    xi_b: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """|λ₁| of the breathing mode: root of n⁻(-|λ₁|) = 0, i.e.

        |ẋ_cl(ξ_B/2)| = mω₀² x_m (G_{-|λ₁|}(ξ_B) + G_{-|λ₁|}(0)).

    Bracketed in (0, Λ_max] with geometric growth; n⁻(0⁻) < 0 because the
    zero mode pins n⁺(0) = 0."""
    if p.is_sharp:
        raise ValueError("negative_eigenvalue requires finite Sigma")
    u_inv = u_inverse(p, xi_b)

    def f(l1: float) -> float:
        table = green_root_table(p, -l1)
        g0 = _green_from_table(p, table, 0.0).real
        gx = _green_from_table(p, table, xi_b).real
        return u_inv - g0 - gx

    lo = 1e-12
    if f(lo) >= 0.0:
        raise ArithmeticError("negative-eigenvalue bracket failed at the origin")
    hi = 0.05
    for _ in range(60):
        if f(hi) > 0.0:
            break
        hi *= 4.0
        if hi > 1e9:
            raise ArithmeticError(
                f"no sign change for the negative eigenvalue in (0, {hi:g}]"
            )
    return float(optimize.brentq(f, lo, hi, xtol=1e-14, rtol=8.9e-16))


def bare_negative_eigenvalue(p: ModelParams) -> float:
    """Zero-coupling transcendental: (1-e^{-ξ⁰})/2 = (1+e^{-κξ⁰})/(2κ),
    κ = √(1 + |λ₁|)."""
    xi0 = bare_bounce_time(p)
    lhs = 0.5 * (1.0 - math.exp(-xi0))

    def f(l1: float) -> float:
        kappa = math.sqrt(1.0 + l1)
        return (1.0 + math.exp(-kappa * xi0)) / (2.0 * kappa) - lhs

    return float(optimize.brentq(f, 1e-14, 1e6, xtol=1e-15, rtol=8.9e-16))


@lru_cache(maxsize=64)
def _bare_reference(barrier_b: float, sigma_ratio: float, cutoff_w: float) -> tuple[float, float, float]:
    """(kinetic norm, ln R, |λ₁|) at zero coupling, cached across sweeps."""
    p_bare = ModelParams(
        barrier_b=barrier_b, sigma_ratio=sigma_ratio,
        gamma=0.0, tau_p=0.0, cutoff_w=cutoff_w,
    )
    xi0 = bare_bounce_time(p_bare)
    s, a = p_bare.s, p_bare.a
    norm_bare = (a * a * s * s / 2.0) * (1.0 - math.exp(-xi0) * (1.0 + xi0))
    ln_r_bare = determinant_ratio(p_bare, xi0)
    lambda1_bare = negative_eigenvalue(p_bare, xi0)
    return norm_bare, ln_r_bare, lambda1_bare


def prefactor_k(
    p: ModelParams,
    cfg: QuadratureConfig | None = None,
) -> PrefactorResult:
    """Assemble K/K₀ = √(N/N₀) · (R/R₀) · √(|λ₁⁰|/|λ₁|).

    The absolute normalization of K cancels in the ratio and is never
    computed.  N is the kinetic norm 1/A_τ₀²; the bare norm comes from the
    closed form (a²s²/2)(1 - e^{-ξ⁰}(1 + ξ⁰))."""
    cfg = cfg or QuadratureConfig()
    if p.is_sharp:
        raise ValueError("prefactor_k requires finite Sigma")

    norm_bare, ln_r_bare, lambda1_bare = _bare_reference(
        p.barrier_b, p.sigma_ratio, p.cutoff_w
    )

    if p.gamma == 0.0 and p.tau_p == 0.0:
        a_norm = 1.0 / math.sqrt(norm_bare)
        return PrefactorResult(
            ln_r=ln_r_bare, ln_r_bare=ln_r_bare,
            lambda1_abs=lambda1_bare, lambda1_bare=lambda1_bare,
            a_norm=a_norm, a_norm_bare=a_norm, k_ratio=1.0,
        )

    xi_b = solve_bounce_time(p, cfg)
    norm = kinetic_norm(p, xi_b, cfg)
    ln_r = determinant_ratio(p, xi_b, cfg)
    lambda1 = negative_eigenvalue(p, xi_b, cfg)
    k_ratio = (
        math.sqrt(norm / norm_bare)
        * math.exp(ln_r - ln_r_bare)
        * math.sqrt(lambda1_bare / lambda1)
    )
    return PrefactorResult(
        ln_r=ln_r, ln_r_bare=ln_r_bare,
        lambda1_abs=lambda1, lambda1_bare=lambda1_bare,
        a_norm=1.0 / math.sqrt(norm), a_norm_bare=1.0 / math.sqrt(norm_bare),
        k_ratio=k_ratio,
    )
