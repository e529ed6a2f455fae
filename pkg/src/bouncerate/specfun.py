"""Sine/cosine integrals and the auxiliary oscillatory-tail functions f and g.

The auxiliary pair is defined by the semi-infinite integrals

    f(z) = ∫₀^∞ sin(u) / (z + u) du
    g(z) = ∫₀^∞ cos(u) / (z + u) du

for complex z off the branch cut (-∞, 0].  On the positive real axis they
reduce to the classical combinations

    f(x) = Ci(x) sin(x) + cos(x) (π/2 - Si(x))
    g(x) = -Ci(x) cos(x) - Si(x) sin(x) + (π/2) sin(x)

Every oscillatory kernel integral in this package collapses to f or g at a
single complex argument (the product of the oscillation scale and a pole
location), so these two functions carry essentially all of the analytic
machinery.
"""

from __future__ import annotations

import numpy as np
from scipy import special

EULER_GAMMA = float(np.euler_gamma)

# |z| above which the divergent asymptotic series (optimally truncated) beats
# the exponential-integral route; validated against the quadrature oracle in
# the test suite.
_ASYMPTOTIC_CUT = 40.0
_ASYMPTOTIC_TERMS = 16

# Relative size below which a negative real part is treated as rounding noise
# from a polynomial root finder rather than a genuine domain violation.
_REAL_AXIS_SLOP = 1e-12


def sin_integral(x):
    """Si(x) = ∫₀ˣ sin t / t dt for x ≥ 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("sin_integral requires x >= 0")
    si, _ = special.sici(x)
    return si if si.ndim else float(si)


def cos_integral(x):
    """Ci(x) for x > 0; the real cosine integral is undefined at x <= 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("cos_integral requires x > 0")
    _, ci = special.sici(x)
    return ci if ci.ndim else float(ci)


def _exp1_scaled(w: np.ndarray) -> np.ndarray:
    """e^w E1(w) for complex w with Re(w) bounded (no overflow guard needed).

    Only called for |w| < _ASYMPTOTIC_CUT, where exp(w) cannot overflow in
    the call patterns of this module (Re(w) <= |w|).
    """
    return np.exp(w) * special.exp1(w)


def _exp1_scaled_upper_cut(b: np.ndarray) -> np.ndarray:
    """e^{-b} E1(-b + i0) for real b > 0 (upper edge of the E1 branch cut)."""
    return np.exp(-b) * (-special.expi(b) - 1j * np.pi)


def _fg_asymptotic(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # f ~ Σ (-1)^k (2k)! / z^{2k+1},  g ~ Σ (-1)^k (2k+1)! / z^{2k+2}
    inv2 = 1.0 / (z * z)
    f = np.zeros_like(z)
    g = np.zeros_like(z)
    term_f = 1.0 / z
    term_g = inv2.copy()
    for k in range(_ASYMPTOTIC_TERMS):
        f = f + term_f
        g = g + term_g
        term_f = term_f * (-(2 * k + 1) * (2 * k + 2)) * inv2
        term_g = term_g * (-(2 * k + 2) * (2 * k + 3)) * inv2
    return f, g


def _fg_exp1(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # g + i f = e^{-iz} E1(-iz) and g - i f = e^{iz} E1(iz); valid for
    # Im(z) >= 0, Re(z) >= 0 with the upper-edge limit on the cut Re(z) = 0.
    h_minus = _exp1_scaled(-1j * z)
    w_plus = 1j * z
    on_cut = (np.real(z) == 0.0) & (np.imag(z) > 0.0)
    if np.any(on_cut):
        h_plus = np.empty_like(z)
        h_plus[~on_cut] = _exp1_scaled(w_plus[~on_cut])
        h_plus[on_cut] = _exp1_scaled_upper_cut(np.imag(z[on_cut]))
    else:
        h_plus = _exp1_scaled(w_plus)
    f = (h_minus - h_plus) / 2j
    g = (h_minus + h_plus) / 2.0
    return f, g


def _aux_fg(z) -> tuple[np.ndarray, np.ndarray]:
    z = np.atleast_1d(np.asarray(z, dtype=complex)).copy()
    re, im = np.real(z), np.imag(z)
    bad = (re <= 0.0) & (im == 0.0)
    bad |= re < -_REAL_AXIS_SLOP * np.abs(z)
    if np.any(bad):
        raise ValueError("aux_f/aux_g require Re(z) > 0 (or z off the cut)")
    # Rounding noise from root finders can leave Re(z) infinitesimally
    # negative; snap it onto the imaginary axis.
    snap = re < 0.0
    if np.any(snap):
        z[snap] = 1j * im[snap]

    f = np.empty_like(z)
    g = np.empty_like(z)
    lower = np.imag(z) < 0.0
    zz = np.where(lower, np.conj(z), z)

    big = np.abs(zz) >= _ASYMPTOTIC_CUT
    if np.any(big):
        f[big], g[big] = _fg_asymptotic(zz[big])
    if np.any(~big):
        f[~big], g[~big] = _fg_exp1(zz[~big])

    f[lower] = np.conj(f[lower])
    g[lower] = np.conj(g[lower])
    return f, g


def aux_f(z):
    """f(z) = ∫₀^∞ sin(u)/(z+u) du, analytically continued off (-∞, 0]."""
    f, _ = _aux_fg(z)
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    return complex(f[0]) if scalar else f.reshape(np.shape(z))


def aux_g(z):
    """g(z) = ∫₀^∞ cos(u)/(z+u) du, analytically continued off (-∞, 0]."""
    _, g = _aux_fg(z)
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    return complex(g[0]) if scalar else g.reshape(np.shape(z))


def aux_fg(z):
    """Both auxiliary functions at once (shared exponential integrals)."""
    f, g = _aux_fg(z)
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    if scalar:
        return complex(f[0]), complex(g[0])
    return f.reshape(np.shape(z)), g.reshape(np.shape(z))
