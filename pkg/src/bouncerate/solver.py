"""Bounce-time equation, classical action, enhancement, and analytic limits.

The bounce time ξ_B solves

    (1/π) ∫₀^∞ dω sin(ωξ_B) / (ω D(ω)) = 1/s,      s = 1 + √(1 + Σ/V₀),

and the classical action follows from the companion cosine integral plus the
local term 2V₀ s ξ_B.  Both integrals collapse, after clearing the Drude
denominators, to partial-fraction sums of the auxiliary functions f and g
over the four roots -Λ_i of the cleared quartic — that expansion is the
primary evaluation path, with direct quadrature kept as an independent
oracle.  The sharp-wall regime (Σ = ∞) bypasses the solve entirely:
S_cl = a²/(2⟨x²⟩) with ⟨x²⟩ the dissipative harmonic fluctuations.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy.integrate import quad

from .model import KernelDenominator, ModelParams, QuadratureConfig, kernel_denominator
from .quadrature import integrate_oscillatory, integrate_smooth_tail
from .specfun import EULER_GAMMA, aux_f, aux_g

# Relative root spacing below which partial fractions switch to the
# perturbed-root fallback (exactly degenerate at zero coupling, where the
# cleared quartic has the double root Λ = 1).
_DEGENERACY_TOL = 1e-7
_DEGENERACY_SPLIT = 1e-5


class Regime(enum.Enum):
    SHARP = "sharp"
    GENERAL = "general"
    NEAR_SYMMETRIC = "near_symmetric"


#: Σ/V₀ below which a solution is tagged NEAR_SYMMETRIC.
NEAR_SYMMETRIC_SIGMA = 0.1


@dataclass(frozen=True)
class BounceSolution:
    xi_b: float
    s_cl: float
    s_cl_bare: float
    enhancement: float
    regime: Regime


@dataclass(frozen=True)
class RootTable:
    """Roots -Λ_i of the cleared kernel quartic in x = ω/ω_c, with the
    partial-fraction coefficients 𝒯_i and the scale 1/z = 1 + τ_p ω_c."""

    lam: tuple[complex, complex, complex, complex]
    coef: tuple[complex, complex, complex, complex]
    z: float
    degenerate: bool


def _quartic_coefficients(p: ModelParams) -> np.ndarray:
    wc = p.cutoff_w
    omega2 = 1.0 / wc**2  # Ω_c² with ω₀ = 1
    inv_z = 1.0 + p.tau_p * wc
    return np.array(
        [
            1.0,
            2.0,
            1.0 + omega2 * inv_z + p.gamma * inv_z / wc,
            omega2 * (1.0 + inv_z) + p.gamma / wc,
            omega2,
        ]
    )


def denominator_roots(p: ModelParams) -> RootTable:
    """Exact roots and 𝒯 coefficients of the cleared kernel quartic."""
    coeffs = _quartic_coefficients(p)
    lam = -np.roots(coeffs)
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]

    degenerate = False
    scale = np.max(np.abs(lam))
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(lam[i] - lam[j]) < _DEGENERACY_TOL * scale:
                degenerate = True
                gap = 0.5 * _DEGENERACY_SPLIT * max(abs(lam[i]), 1e-30)
                direction = lam[i] - lam[j]
                direction = direction / abs(direction) if direction != 0 else 1.0
                lam[i] = lam[i] + gap * direction
                lam[j] = lam[j] - gap * direction

    z = 1.0 / (1.0 + p.tau_p * p.cutoff_w)
    coef = []
    for i in range(4):
        li = lam[i]
        denom = li
        for j in range(4):
            if j != i:
                denom *= li - lam[j]
        coef.append((z - li * (z + 1.0) + li * li) / denom)
    return RootTable(lam=tuple(lam), coef=tuple(coef), z=z, degenerate=degenerate)


def approx_denominator_roots(p: ModelParams) -> tuple[complex, complex, complex, complex]:
    """Large-cutoff closed forms Λ_{1..4} (validation target, not the primary
    path): σ² = γτ_p, P± = (γ ± τ_p)/2 in reduced units."""
    sig2 = p.gamma * p.tau_p
    p_plus = 0.5 * (p.gamma + p.tau_p)
    p_minus = 0.5 * (p.gamma - p.tau_p)
    omega = 1.0 / p.cutoff_w
    root = np.sqrt(complex(p_minus * p_minus - 1.0))
    l1 = omega * (p_plus + root) / (1.0 + sig2)
    l2 = omega * (p_plus - root) / (1.0 + sig2)
    shift = omega * p_plus / (1.0 + sig2)
    l3 = 1.0 - shift + 1j * math.sqrt(sig2) * (1.0 + shift)
    l4 = 1.0 - shift - 1j * math.sqrt(sig2) * (1.0 + shift)
    return (l1, l2, l3, l4)


# ---------------------------------------------------------------------------
# Bounce-time equation: left side and solve
# ---------------------------------------------------------------------------

def bounce_lhs(
    xi,
    p: ModelParams,
    cfg: QuadratureConfig | None = None,
    method: str = "expansion",
    table: RootTable | None = None,
):
    """(1/π) ∫₀^∞ dω sin(ωξ)/(ω D(ω)); increases from 0 to 1/2 as ξ → ∞."""
    cfg = cfg or QuadratureConfig()
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi_arr < 0.0):
        raise ValueError("bounce_lhs requires xi >= 0")
    if method == "expansion":
        table = table or denominator_roots(p)
        lam = np.asarray(table.lam)
        coef = np.asarray(table.coef)
        args = np.multiply.outer(xi_arr * p.cutoff_w, lam)
        vals = np.zeros(xi_arr.shape)
        nonzero = xi_arr > 0.0
        if np.any(nonzero):
            fvals = aux_f(args[nonzero])
            acc = (fvals * coef).sum(axis=-1)
            vals[nonzero] = 0.5 + (acc / (math.pi * table.z * p.cutoff_w**2)).real
        out = vals
    elif method == "quadrature":
        den = KernelDenominator.from_params(p)
        out = np.empty_like(xi_arr)
        for i, x in enumerate(xi_arr):
            if x == 0.0:
                out[i] = 0.0
                continue
            h = lambda w: 1.0 / (w * den.evaluate(w))
            out[i] = integrate_oscillatory(
                h, x, "sin", cfg, breakpoints=(1.0, p.cutoff_w)
            ) / math.pi
    else:
        raise ValueError(f"unknown method {method!r}")
    return out if np.ndim(xi) else float(out[0])


def bare_bounce_time(p: ModelParams) -> float:
    """Zero-coupling closed form ξ_B = ln(s/(s-2))."""
    if p.is_sharp:
        return 0.0
    s = p.s
    return math.log(s / (s - 2.0))


def bare_action(p: ModelParams) -> float:
    """Zero-coupling closed form S_cl = V₀ξ_B(2s - s²) + 2V₀s.

    Obtained by residue evaluation of the action integral with D = ω² + 1;
    in the sharp-wall limit this reduces to 2V₀ = a²."""
    if p.is_sharp:
        return 2.0 * p.v0
    s = p.s
    xi0 = bare_bounce_time(p)
    return p.v0 * xi0 * (2.0 * s - s * s) + 2.0 * p.v0 * s


def solve_bounce_time(
    p: ModelParams,
    cfg: QuadratureConfig | None = None,
    method: str = "expansion",
) -> float:
    """Solve the bounce-time equation for ξ_B (0 exactly for the sharp wall)."""
    cfg = cfg or QuadratureConfig()
    if p.is_sharp:
        return 0.0
    target = 1.0 / p.s
    table = denominator_roots(p) if method == "expansion" else None

    def f(x):
        return bounce_lhs(x, p, cfg, method=method, table=table) - target

    hi = 1.0
    for _ in range(60):
        if f(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise ValueError("no bracket found for the bounce time (Sigma -> 0 pathology?)")
    lo = 0.0 if hi == 1.0 else hi / 2.0
    xi = optimize.brentq(f, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    return float(xi)


# ---------------------------------------------------------------------------
# Classical action and enhancement
# ---------------------------------------------------------------------------

def classical_action(
    p: ModelParams,
    xi_b: float,
    cfg: QuadratureConfig | None = None,
    method: str = "expansion",
) -> float:
    """Euclidean action of the bounce at the given (solved) bounce time."""
    cfg = cfg or QuadratureConfig()
    if p.is_sharp:
        return p.a**2 / (2.0 * fluctuations(p))
    if xi_b < 0.0:
        raise ValueError("xi_b must be >= 0")
    v0, s, sigma = p.v0, p.s, p.sigma
    if xi_b == 0.0:
        return 0.0
    if method == "expansion":
        table = denominator_roots(p)
        lam = np.asarray(table.lam)
        coef = np.asarray(table.coef)
        wc = p.cutoff_w
        gvals = aux_g(xi_b * wc * lam)
        series = ((coef / lam) * (np.log(lam * wc) + gvals)).sum().real
        bracket = p.gamma * (EULER_GAMMA + math.log(xi_b)) - series / (table.z * wc**3)
        return (2.0 * v0 * s * s / math.pi) * bracket - xi_b * sigma
    if method == "quadrature":
        den = KernelDenominator.from_params(p)
        # (1 - cos ωξ)/(ω² D): keep the combination near ω = 0, split beyond.
        split = math.pi / xi_b

        def combined(w):
            return (1.0 - np.cos(w * xi_b)) / (w * w * den.evaluate(w))

        head, _err = quad(
            combined, 0.0, split, limit=200, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol
        )
        smooth = integrate_smooth_tail(
            lambda w: 1.0 / (w * w * den.evaluate(w)),
            cfg,
            start=split,
            breakpoints=(max(split * 2, 1.0), p.cutoff_w),
        )
        osc = integrate_oscillatory(
            lambda w: 1.0 / (w * w * den.evaluate(w)),
            xi_b,
            "cos",
            cfg,
            start=split,
            breakpoints=(max(split * 2, 1.0), p.cutoff_w),
        )
        integral = head + smooth - osc
        return -(2.0 * v0 * s * s / math.pi) * integral + 2.0 * v0 * s * xi_b
    raise ValueError(f"unknown method {method!r}")


def enhancement(
    p: ModelParams,
    cfg: QuadratureConfig | None = None,
    method: str = "expansion",
) -> BounceSolution:
    """Full bounce solution with the exponential-rate enhancement ℰ.

    The zero-coupling reference action comes from the closed forms, never
    from quadrature, so ℰ = 1 is exact when both couplings vanish.
    """
    cfg = cfg or QuadratureConfig()
    s_bare = bare_action(p)
    if p.is_sharp:
        regime = Regime.SHARP
        xi = 0.0
    elif p.sigma_ratio < NEAR_SYMMETRIC_SIGMA:
        regime = Regime.NEAR_SYMMETRIC
        xi = None
    else:
        regime = Regime.GENERAL
        xi = None

    if p.gamma == 0.0 and p.tau_p == 0.0:
        xi = bare_bounce_time(p)
        return BounceSolution(xi, s_bare, s_bare, 1.0, regime)

    if xi is None:
        xi = solve_bounce_time(p, cfg, method=method)
    s_cl = classical_action(p, xi, cfg, method=method)
    if s_cl <= 0.0:
        warnings.warn(
            f"classical action S_cl = {s_cl:g} is not positive at {p}",
            RuntimeWarning,
            stacklevel=2,
        )
    enh = math.exp(-(s_cl - s_bare)) if s_cl - s_bare > -700.0 else math.inf
    return BounceSolution(xi, s_cl, s_bare, enh, regime)


# ---------------------------------------------------------------------------
# Harmonic fluctuations and the closed-form regime limits
# ---------------------------------------------------------------------------

def _theta_factor(p_plus: float, p_minus: float) -> float:
    """Θ_{q,p}/√|1 - P₋²| with the arctan (|P₋| < 1) / arctanh (|P₋| > 1)
    branches and their common |P₋| → 1 limit."""
    if p_plus == 0.0:
        return math.pi / 2.0
    u2 = 1.0 - p_minus * p_minus
    if abs(u2) < 1e-12:
        return 1.0 / p_plus
    if u2 > 0.0:
        u = math.sqrt(u2)
        return math.atan2(u, p_plus) / u
    u = math.sqrt(-u2)
    return math.atanh(u / p_plus) / u


def fluctuations(p: ModelParams) -> float:
    """⟨x²⟩ of the dissipative harmonic well, ⟨x²⟩₀ = 1/2 in reduced units.

    Momentum dissipation increases the fluctuations (cutoff-limited), position
    dissipation suppresses them."""
    if p.gamma == 0.0 and p.tau_p == 0.0:
        return 0.5
    sig2 = p.gamma * p.tau_p
    p_plus = 0.5 * (p.gamma + p.tau_p)
    p_minus = 0.5 * (p.gamma - p.tau_p)
    sig = math.sqrt(sig2)
    bracket = p.tau_p * (
        math.log(p.cutoff_w) + sig * math.atan(sig) + math.log1p(sig2)
    )
    bracket += (1.0 + p.tau_p * p_minus) * _theta_factor(p_plus, p_minus)
    return 0.5 * (2.0 / (math.pi * (1.0 + sig2))) * bracket


class AnalyticRegime(enum.Enum):
    SHARP_WEAK = "sharp_weak"          # ω_c ξ_B ≪ 1, cutoff-limited base
    CUTOFF_FREE = "cutoff_free"        # Σ ≫ V₀ with ω_c ξ_B ≫ 1
    NEAR_SYMMETRIC = "near_symmetric"  # Σ ≪ V₀, pure momentum
    INTERMEDIATE = "intermediate"      # full nonlinear intermediate solve
    POSITION_ONLY = "position_only"    # Σ ≪ V₀ suppression, τ_p = 0


#: Base constant of the cutoff-free regime, e^{2(1-C)}/4 ≈ 0.582.
K1_CUTOFF_FREE = math.exp(2.0 * (1.0 - EULER_GAMMA)) / 4.0


@dataclass(frozen=True)
class AnalyticEstimate:
    enhancement: float
    regime: AnalyticRegime
    warning: str | None = None


def _log_ratio_factor(p: ModelParams) -> float:
    """(1/(2√(P₋²-1))) ln(Λ₁/Λ₂) on the branch continuous in the couplings;
    equals arctan(√(1-P₋²)/P₊)/√(1-P₋²) when |P₋| < 1."""
    p_plus = 0.5 * (p.gamma + p.tau_p)
    p_minus = 0.5 * (p.gamma - p.tau_p)
    return _theta_factor(p_plus, p_minus)


def analytic_limit(p: ModelParams, regime: AnalyticRegime) -> AnalyticEstimate:
    """Closed-form enhancement in the requested regime.

    Out-of-regime parameters produce a warning string on the result rather
    than an error; the formula is still evaluated."""
    warning = None
    v0 = p.v0
    if regime is AnalyticRegime.SHARP_WEAK:
        if p.gamma != 0.0 or p.tau_p > 0.1:
            warning = "valid for gamma = 0 and tau_p << 1"
        enh = (p.cutoff_w / math.sqrt(math.e)) ** (4.0 * v0 * p.tau_p / math.pi)
        return AnalyticEstimate(enh, regime, warning)

    if regime is AnalyticRegime.CUTOFF_FREE:
        if p.gamma != 0.0 or p.tau_p > 0.1 or p.sigma_ratio < 100.0:
            warning = "valid for gamma = 0, tau_p << 1, Sigma >> V0"
        base = K1_CUTOFF_FREE * p.sigma_ratio
        enh = base ** (2.0 * v0 * p.tau_p / math.pi)
        return AnalyticEstimate(enh, regime, warning)

    if regime is AnalyticRegime.NEAR_SYMMETRIC:
        if p.gamma != 0.0 or p.tau_p > 0.1 or p.sigma_ratio > NEAR_SYMMETRIC_SIGMA:
            warning = "valid for gamma = 0, tau_p << 1, Sigma << V0"
        enh = math.exp(4.0 * v0 * p.tau_p / math.pi)
        return AnalyticEstimate(enh, regime, warning)

    if regime is AnalyticRegime.POSITION_ONLY:
        if p.tau_p != 0.0 or p.sigma_ratio > NEAR_SYMMETRIC_SIGMA:
            warning = "valid for tau_p = 0 and Sigma << V0"
        g = p.gamma
        if g == 0.0:
            return AnalyticEstimate(1.0, regime, warning)
        p_minus = 0.5 * g
        q = _log_ratio_factor(p)
        eps1 = (8.0 / math.pi) * v0 * g * (EULER_GAMMA - 1.0) - 4.0 * v0 * (
            (2.0 / math.pi) * (g * p_minus - 1.0) * q + 1.0
        )
        coef = (8.0 / math.pi) * v0 * g
        log_enh = -eps1 - coef * math.log((8.0 / math.pi) * g / p.sigma_ratio)
        return AnalyticEstimate(math.exp(log_enh), regime, warning)

    if regime is AnalyticRegime.INTERMEDIATE:
        return _intermediate_limit(p)

    raise ValueError(f"unknown analytic regime {regime!r}")


def _intermediate_limit(p: ModelParams) -> AnalyticEstimate:
    """Nonlinear intermediate-regime solve: the bounce-time relation valid for
    ω₀ξ_B ≪ 1 ≪ ω_cξ_B, followed by the quadratic-in-ξ action form."""
    warning = None
    if p.sigma_ratio < 100.0:
        warning = "valid for Sigma >> V0 with omega_c xi_B >> 1"
    v0, s = p.v0, p.s
    sig2 = p.gamma * p.tau_p
    p_minus = 0.5 * (p.gamma - p.tau_p)
    q = _log_ratio_factor(p)
    c1 = (1.0 + p.tau_p * p_minus) * q

    def lhs(xi):
        inner = c1 - p.tau_p * (
            math.log(xi) - 0.5 * math.log1p(sig2) + EULER_GAMMA - 1.0
        )
        return xi * inner / (math.pi * (1.0 + sig2)) - 1.0 / s

    xi0 = math.pi * (1.0 + sig2) / (s * c1) if c1 > 0 else 2.0 / s
    lo = min(xi0 * 1e-3, 1e-8)
    if p.tau_p > 0.0:
        arg = c1 / p.tau_p - 1.0 + 0.5 * math.log1p(sig2) - EULER_GAMMA + 1.0
        hi = math.exp(min(arg, 50.0))
    else:
        hi = max(10.0 * xi0, 1.0)
    if lhs(hi) < 0.0 and lhs(lo) < 0.0:
        return AnalyticEstimate(
            math.nan, AnalyticRegime.INTERMEDIATE,
            "no intermediate-regime solution (regime violated)",
        )
    xi = optimize.brentq(lhs, lo, hi, xtol=1e-15, rtol=8.9e-16)
    action = v0 * s * xi - v0 * s * s * p.tau_p * xi * xi / (
        2.0 * math.pi * (1.0 + sig2)
    )
    log_enh = 2.0 * v0 - action
    return AnalyticEstimate(math.exp(log_enh), AnalyticRegime.INTERMEDIATE, warning)
