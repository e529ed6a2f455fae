"""Direct quadrature of smooth and oscillatory semi-infinite integrals.

These are the oracle-mode evaluators: slower than the partial-fraction
expansions but independent of them.  The oscillatory tail goes through
QUADPACK's Fourier integrator (cycle integration with series acceleration);
if that fails to converge, an explicit zero-interval segmentation with an
Euler transformation takes over.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .model import QuadratureConfig


class NumericalError(RuntimeError):
    """Quadrature failed to converge within budget."""

    def __init__(self, message: str, achieved: float, requested: float):
        super().__init__(
            f"{message} (achieved {achieved:.3e}, requested {requested:.3e})"
        )
        self.achieved = achieved
        self.requested = requested


def euler_sum(terms) -> tuple[float, float]:
    """Euler-transformed sum of alternating segment values.

    Returns (sum, error_estimate); the estimate is the change produced by the
    last averaging stage."""
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        return 0.0, 0.0
    row = np.cumsum(terms)
    prev = row[-1]
    for _ in range(min(40, row.size - 1)):
        if row.size < 2:
            break
        row = 0.5 * (row[1:] + row[:-1])
        prev, last = row[-1], row[-1]
    est = float(row[-1])
    return est, abs(est - float(prev)) + abs(terms[-1]) * 2.0 ** (1 - row.size)


def _euler_tail(f, start: float, half_period: float, cfg: QuadratureConfig) -> tuple[float, float]:
    segments = []
    lo = start
    prev_est = None
    for k in range(cfg.max_depth):
        hi = lo + half_period
        seg, _ = integrate.quad(f, lo, hi, limit=60, epsabs=1e-13, epsrel=1e-11)
        segments.append(seg)
        lo = hi
        if k >= 8 and k % 4 == 3:
            est, _ = euler_sum(segments)
            if prev_est is not None and abs(est - prev_est) < 1e-12:
                return est, abs(est - prev_est)
            prev_est = est
    est, err = euler_sum(segments)
    return est, max(err, abs(est - prev_est) if prev_est is not None else err)


def integrate_oscillatory(
    h,
    freq: float,
    kind: str,
    cfg: QuadratureConfig | None = None,
    start: float = 0.0,
    breakpoints: tuple[float, ...] = (),
) -> float:
    """∫_start^∞ h(ω)·trig(ω·freq) dω for smooth, decaying h.

    The head (up to the first trigonometric zero past `start`) is integrated
    adaptively with the supplied breakpoints; the tail uses the Fourier
    integrator.  freq = 0 integrates h itself for kind "cos" and returns 0
    for kind "sin".
    """
    cfg = cfg or QuadratureConfig()
    if kind not in ("sin", "cos"):
        raise ValueError("kind must be 'sin' or 'cos'")
    if freq < 0.0:
        raise ValueError("freq must be >= 0")
    if freq == 0.0:
        if kind == "sin":
            return 0.0
        return integrate_smooth_tail(h, cfg, start=start, breakpoints=breakpoints)

    trig = np.sin if kind == "sin" else np.cos

    def f(w):
        return h(w) * trig(w * freq)

    half_period = math.pi / freq
    z1 = (math.floor(start / half_period) + 1) * half_period
    pts = sorted(b for b in breakpoints if start < b < z1)
    head, head_err = integrate.quad(
        f, start, z1, points=pts or None, limit=800,
        epsabs=max(cfg.abs_tol, 1e-14), epsrel=max(cfg.rel_tol, 1e-12),
    )

    ret = integrate.quad(
        h, z1, np.inf, weight=kind, wvar=freq,
        epsabs=max(cfg.abs_tol, 1e-13), limlst=max(50, cfg.max_depth // 4),
        limit=200, full_output=1,
    )
    tail, tail_err = ret[0], ret[1]
    if len(ret) > 3 or not math.isfinite(tail):
        # Fourier integrator struggled; fall back to explicit zero-interval
        # segmentation with Euler acceleration.
        tail, tail_err = _euler_tail(f, z1, half_period, cfg)
        if not math.isfinite(tail) or tail_err > 1e-7 * max(1.0, abs(head + tail)):
            raise NumericalError(
                "oscillatory tail did not converge", tail_err, cfg.abs_tol
            )
    return head + tail


def integrate_smooth_tail(
    h,
    cfg: QuadratureConfig | None = None,
    start: float = 0.0,
    breakpoints: tuple[float, ...] = (),
) -> float:
    """∫_start^∞ h(ω) dω for smooth, absolutely integrable h."""
    cfg = cfg or QuadratureConfig()
    pts = sorted({b for b in breakpoints if b > start})
    total = 0.0
    lo = start
    for b in pts:
        val, _ = integrate.quad(
            h, lo, b, limit=400,
            epsabs=max(cfg.abs_tol, 1e-14), epsrel=max(cfg.rel_tol, 1e-12),
        )
        total += val
        lo = b
    tail, _ = integrate.quad(
        h, lo, np.inf, limit=400,
        epsabs=max(cfg.abs_tol, 1e-14), epsrel=max(cfg.rel_tol, 1e-12),
    )
    return total + tail
