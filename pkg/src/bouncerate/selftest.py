"""Fast independent-oracle checks, runnable as `bouncerate selftest`.

Every check compares a primary evaluation path against a derivation that does
not share code with it: closed-form residue results, direct quadrature of the
defining integrals, or exact identities (zero mode, saddle crossing).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .model import ModelParams, QuadratureConfig
from .path import energy_loss, kinetic_norm
from .prefactor import bare_negative_eigenvalue, channel_amplitudes, negative_eigenvalue
from .smooth import SmoothParams, matching_time, smooth_bounce
from .solver import (
    bare_action,
    bare_bounce_time,
    bounce_lhs,
    classical_action,
    solve_bounce_time,
)
from .specfun import aux_f, aux_g, cos_integral, sin_integral


def _fourier_oracle(z: complex, kind: str) -> complex:
    re = quad(lambda u: (1.0 / (z + u)).real, 0, np.inf, weight=kind, wvar=1.0, limit=400)[0]
    im = quad(lambda u: (1.0 / (z + u)).imag, 0, np.inf, weight=kind, wvar=1.0, limit=400)[0]
    return re + 1j * im


def run_selftest() -> int:
    cfg = QuadratureConfig()
    checks: list[tuple[str, float, float]] = []  # (name, got-vs-oracle error, tolerance)

    # Sine/cosine integrals against their defining series values.
    checks.append(("Si(1)", abs(sin_integral(1.0) - 0.946083070367183), 1e-12))
    checks.append(("Ci(1)", abs(cos_integral(1.0) - 0.337403922900968), 1e-12))

    # Auxiliary pair against Fourier quadrature at mixed arguments.
    for z in (2.0 + 1.0j, 0.3, 15.0 - 4.0j):
        checks.append((f"aux_f({z})", abs(aux_f(z) - _fourier_oracle(z, "sin")), 1e-8))
        checks.append((f"aux_g({z})", abs(aux_g(z) - _fourier_oracle(z, "cos")), 1e-8))

    # Zero-coupling closed forms through the full partial-fraction solve.
    for sig in (0.01, 3.0):
        p = ModelParams(12.5, sig)
        s = p.s
        xi = solve_bounce_time(p, cfg)
        checks.append((f"bare xi_B sigma={sig}",
                       abs(xi - math.log(s / (s - 2.0))) / xi, 1e-8))
        act = classical_action(p, xi, cfg)
        checks.append((f"bare S_cl sigma={sig}",
                       abs(act - bare_action(p)) / bare_action(p), 1e-8))

    # Partial fractions vs direct quadrature on dissipative sets.
    rng = np.random.default_rng(7)
    for i in range(3):
        p = ModelParams(
            barrier_b=float(rng.uniform(5, 20)),
            sigma_ratio=float(10 ** rng.uniform(-1.5, 2.0)),
            gamma=float(rng.uniform(0.0, 0.4)),
            tau_p=float(rng.uniform(0.0, 0.2)),
        )
        xi = solve_bounce_time(p, cfg)
        le = bounce_lhs(xi, p, cfg)
        lq = bounce_lhs(xi, p, cfg, method="quadrature")
        checks.append((f"oracle lhs set {i}", abs(le - lq) / abs(lq), 1e-9))
        ae = classical_action(p, xi, cfg)
        aq = classical_action(p, xi, cfg, method="quadrature")
        checks.append((f"oracle action set {i}", abs(ae - aq) / abs(aq), 1e-9))

    # Kinetic norm against the zero-coupling closed form.
    p = ModelParams(12.5, 3.0)
    xi0 = bare_bounce_time(p)
    closed = (p.a**2 * p.s**2 / 2.0) * (1.0 - math.exp(-xi0) * (1.0 + xi0))
    checks.append(("bare kinetic norm",
                   abs(kinetic_norm(p, xi0, cfg) - closed) / closed, 1e-9))

    # Elastic tunneling at zero coupling.
    checks.append(("bare energy loss", energy_loss(p, cfg).value, 1e-6))

    # Zero-mode identity of the fluctuation operator, dissipative.
    pd = ModelParams(12.5, 1.0, gamma=0.15, tau_p=0.08)
    xid = solve_bounce_time(pd, cfg)
    n_plus, _ = channel_amplitudes(pd, 0.0, xid)
    checks.append(("zero-mode n+(0)", abs(n_plus), 1e-10))

    # Negative eigenvalue against the bare transcendental oracle.
    l_pipe = negative_eigenvalue(p, xi0, cfg)
    l_bare = bare_negative_eigenvalue(p)
    checks.append(("bare negative eigenvalue", abs(l_pipe - l_bare) / l_bare, 1e-8))

    # Smooth barrier: matching time closed form and crossing condition.
    sp = SmoothParams(12.5, 20.0)
    t1 = matching_time(sp)
    checks.append(("smooth matching time",
                   abs(t1 - (math.pi - math.atan(20.0)) / 20.0), 1e-12))
    checks.append(("smooth crossing x(tau1)", abs(smooth_bounce(t1, sp, t1)), 1e-9))

    failures = 0
    for name, err, tol in checks:
        ok = err < tol
        failures += not ok
        print(f"[{'ok' if ok else 'FAIL'}] {name}: err={err:.3e} tol={tol:.0e}")
    print(f"selftest: {len(checks) - failures}/{len(checks)} checks passed")
    return 1 if failures else 0
