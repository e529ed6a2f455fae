"""Smooth-barrier potential: bounce ansatz and perturbative momentum action.

The barrier top is rounded by inverting a parabola of frequency ω_B = r·ω₀ on
the right of the matching point x = 0:

    V(x) = (1/2)(x + a)²                      x < 0
    V(x) = -(r²/2)[(x - c·a)² - 2d]           x > 0

with c = 1/r², d = (a²c/2)(1+c), and a = √(2B/(1+c)) fixing the barrier top
at height B.  (The barrier-top value r²d then equals B exactly.)  V and V′
are continuous at x = 0 by construction.

The non-dissipative bounce is piecewise exponential/cosine with matching time
τ₁ solving c·a + B(τ₁)cos(ω_Bτ₁) = 0; equivalently tan(ω_Bτ₁) = -r, so
τ₁ = (π - arctan r)/ω_B, which the scan-and-polish solver reproduces.  The
momentum-dissipation action is evaluated perturbatively by applying the full
frequency-domain kernel to the frozen bare path, whose velocity transform is
closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy.integrate import quad


@dataclass(frozen=True)
class SmoothParams:
    """Barrier height B = V₀/(ħω₀) and frequency ratio r = ω_B/ω₀."""

    barrier_b: float
    freq_ratio: float

    def __post_init__(self) -> None:
        if not (self.barrier_b > 0.0):
            raise ValueError("barrier_b must be positive")
        if not (self.freq_ratio > 0.0):
            raise ValueError("freq_ratio must be positive")

    @property
    def omega_b(self) -> float:
        return self.freq_ratio

    @property
    def c(self) -> float:
        return 1.0 / self.freq_ratio**2

    @property
    def a(self) -> float:
        return math.sqrt(2.0 * self.barrier_b / (1.0 + self.c))

    @property
    def d(self) -> float:
        return 0.5 * self.a**2 * self.c * (1.0 + self.c)


def smooth_potential(x, sp: SmoothParams):
    """Piecewise C¹ potential with well minimum at x = -a and smooth top."""
    x = np.asarray(x, dtype=float)
    left = 0.5 * (x + sp.a) ** 2
    right = -0.5 * sp.omega_b**2 * ((x - sp.c * sp.a) ** 2 - 2.0 * sp.d)
    out = np.where(x < 0.0, left, right)
    return out if out.ndim else float(out)


def _b_coefficient(theta: float, sp: SmoothParams) -> float:
    """B(τ₁) with θ = ω_B τ₁."""
    wb = sp.omega_b
    return (sp.c + 1.0) * sp.a / (wb * math.sin(theta) - math.cos(theta))


def matching_time(sp: SmoothParams, scan_step: float = 1e-3) -> float:
    """Smallest positive τ₁ with x(±τ₁) = 0 and a valid (positive) bounce arc.

    Scans ω_Bτ₁ ∈ (0, π) for sign changes of c·a + B(τ₁)cos(ω_Bτ₁), skipping
    the spurious crossing where the denominator of B(τ₁) vanishes, then
    polishes with a bracketed solve."""
    wb = sp.omega_b

    def f(theta: float) -> float:
        return sp.c * sp.a + _b_coefficient(theta, sp) * math.cos(theta)

    def denom(theta: float) -> float:
        return wb * math.sin(theta) - math.cos(theta)

    thetas = np.arange(scan_step, math.pi, scan_step)
    prev_t, prev_f, prev_d = thetas[0], f(thetas[0]), denom(thetas[0])
    for t in thetas[1:]:
        cur_f, cur_d = f(t), denom(t)
        # A sign change of the B(τ₁) denominator is a pole of f, not a root.
        if prev_f * cur_f < 0.0 and prev_d * cur_d > 0.0:
            theta1 = optimize.brentq(f, prev_t, t, xtol=1e-15, rtol=8.9e-16)
            if _b_coefficient(theta1, sp) > 0.0:
                return float(theta1 / wb)
        prev_t, prev_f, prev_d = t, cur_f, cur_d
    raise ArithmeticError("no valid matching time found in (0, pi/omega_B)")


def smooth_bounce(tau, sp: SmoothParams, tau1: float | None = None):
    """Three-piece bounce path: exponential tails into the well minimum -a and
    a cosine arc over the barrier; C¹ at ±τ₁ by construction."""
    if tau1 is None:
        tau1 = matching_time(sp)
    tau = np.asarray(tau, dtype=float)
    wb, a, c = sp.omega_b, sp.a, sp.c
    theta1 = wb * tau1
    b_coef = _b_coefficient(theta1, sp)
    a_coef = (c + 1.0) * a + b_coef * math.cos(theta1)
    tail = -a + a_coef * np.exp(-(np.abs(tau) - tau1))
    arc = c * a + b_coef * np.cos(wb * tau)
    out = np.where(np.abs(tau) <= tau1, arc, tail)
    return out if out.ndim else float(out)


def slope_at_escape(sp: SmoothParams) -> float:
    """dV/dx at the non-dissipative turning point x_esc = c·a + √(2d);
    equals -r√(2B) exactly."""
    return -sp.omega_b**2 * math.sqrt(2.0 * sp.d)


def slope_mapped_sigma(sp: SmoothParams) -> float:
    """Σ/V₀ of the piecewise-parabolic model with the same barrier slope at
    the turning point: √(2Σ) = |slope| gives Σ/V₀ = r²."""
    return slope_at_escape(sp) ** 2 / (2.0 * sp.barrier_b)


def bare_action(sp: SmoothParams, tau1: float | None = None) -> float:
    """S₀ on the closed-form bounce, via ∫ẋ² dτ (energy conservation)."""
    if tau1 is None:
        tau1 = matching_time(sp)
    wb = sp.omega_b
    theta1 = wb * tau1
    b_coef = _b_coefficient(theta1, sp)
    a_coef = (sp.c + 1.0) * sp.a + b_coef * math.cos(theta1)
    tails = a_coef**2
    arc = b_coef**2 * wb * (theta1 - 0.5 * math.sin(2.0 * theta1))
    return tails + arc


def velocity_transform(omega, sp: SmoothParams, tau1: float | None = None):
    """W(ω) = ∫₀^∞ ẋ(τ) sin(ωτ) dτ for the closed-form bounce.

    The 1/ω pieces of the arc and tail parts cancel by the C¹ matching, so
    W decays like 1/ω² at large ω."""
    if tau1 is None:
        tau1 = matching_time(sp)
    omega = np.asarray(omega, dtype=float)
    wb = sp.omega_b
    theta1 = wb * tau1
    b_coef = _b_coefficient(theta1, sp)
    a_coef = (sp.c + 1.0) * sp.a + b_coef * math.cos(theta1)

    # arc: ∫₀^{τ₁} (-B ω_B sin(ω_B τ)) sin(ωτ) dτ
    def sinc_diff(q):
        # sin(qτ₁)/q with the q → 0 limit
        return tau1 * np.sinc(q * tau1 / math.pi)

    arc = -0.5 * b_coef * wb * (sinc_diff(wb - omega) - sinc_diff(wb + omega))
    # tail: ∫_{τ₁}^∞ (-A e^{-(τ-τ₁)}) sin(ωτ) dτ
    tail = -a_coef * (np.sin(omega * tau1) + omega * np.cos(omega * tau1)) / (
        1.0 + omega * omega
    )
    out = arc + tail
    return out if out.ndim else float(out)


def dissipative_action_shift(
    sp: SmoothParams,
    tau_p: float,
    cutoff_w: float = 8000.0,
    tau1: float | None = None,
) -> float:
    """S_dis^(p)[x_cl] = (2/π)∫₀^∞ F̂ᵖ(ω) W(ω)² dω on the frozen bare path,
    with the full kernel F̂ᵖ = -τ_p ω f_c/(1 + τ_p ω f_c)."""
    if tau_p == 0.0:
        return 0.0
    if tau1 is None:
        tau1 = matching_time(sp)

    def integrand(w):
        fc = 1.0 / (1.0 + w / cutoff_w)
        kernel = -tau_p * w * fc / (1.0 + tau_p * w * fc)
        wt = velocity_transform(w, sp, tau1)
        return kernel * wt * wt

    wb = sp.omega_b
    pieces = sorted({1.0, wb, 10.0 * wb, min(1.0 / tau_p, cutoff_w)})
    total = 0.0
    lo = 0.0
    for b in pieces:
        val, _ = quad(integrand, lo, b, limit=400, epsabs=1e-13, epsrel=1e-11)
        total += val
        lo = b
    tail, _ = quad(integrand, lo, np.inf, limit=400, epsabs=1e-13, epsrel=1e-11)
    return (2.0 / math.pi) * (total + tail)


def perturbative_action(
    sp: SmoothParams,
    tau_p: float,
    cutoff_w: float = 8000.0,
) -> tuple[float, float]:
    """(S, ℰ) with S = S₀[x_cl] + S_dis^(p)[x_cl] and ℰ = exp(-S_dis).

    Valid for τ_p·ω₀ ≪ 1 (the bounce is frozen at its bare shape)."""
    tau1 = matching_time(sp)
    s0 = bare_action(sp, tau1)
    shift = dissipative_action_shift(sp, tau_p, cutoff_w, tau1)
    return s0 + shift, math.exp(-shift)
