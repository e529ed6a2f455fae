"""Acceptance criteria, one test per criterion, with PASS/FAIL lines.

Each criterion runs at its stated tolerance.  Three of them (2, 4, 7) pin
tolerances or parameter points that the exact solution provably cannot meet;
they are implemented faithfully and allowed to fail — the quantitative
analysis lives in the project notes (decisions ledger), and the measured
values are printed alongside the FAIL line.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from bouncerate import (
    INFINITE,
    AnalyticRegime,
    ModelParams,
    QuadratureConfig,
    analytic_limit,
    bare_action,
    bare_bounce_time,
    bounce_lhs,
    classical_action,
    energy_loss,
    enhancement,
    eom_residual,
    negative_eigenvalue,
    phases,
    prefactor_k,
    reconstruct_path,
    solve_bounce_time,
)
from bouncerate.prefactor import u_inverse

CFG = QuadratureConfig()
BASE = dict(barrier_b=12.5, cutoff_w=8000.0)


def report(num: int, ok: bool, detail: str) -> bool:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def log_dev(value: float, reference: float) -> float:
    return abs(math.log(value) - math.log(reference)) / abs(math.log(reference))


def test_criterion_01_zero_coupling_exactness():
    t0 = time.perf_counter()
    worst = 0.0
    for sig in (0.01, 1.0, 3.0, 100.0):
        p = ModelParams(sigma_ratio=sig, **BASE)
        s = p.s
        xi = solve_bounce_time(p, CFG)
        act = classical_action(p, xi, CFG)
        xi_ref = math.log(s / (s - 2.0))
        act_ref = 12.5 * xi_ref * (2.0 * s - s * s) + 2.0 * 12.5 * s
        worst = max(worst, abs(xi - xi_ref) / xi_ref, abs(act - act_ref) / act_ref)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 1.0
    assert report(1, ok, f"bare closed forms: worst rel err {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_sharp_wall_weak_coupling_window():
    t0 = time.perf_counter()
    devs = []
    for tp in np.geomspace(1e-4, 1e-2, 5):
        p = ModelParams(sigma_ratio=INFINITE, tau_p=float(tp), **BASE)
        sol = enhancement(p, CFG)
        ref = analytic_limit(p, AnalyticRegime.SHARP_WEAK).enhancement
        devs.append(log_dev(sol.enhancement, ref))
    elapsed = time.perf_counter() - t0
    worst = max(devs)
    ok = worst < 0.05 and elapsed < 5.0
    detail = (
        f"ln-dev vs cutoff-limited formula over tau_p in [1e-4, 1e-2]: "
        f"max {worst * 100:.2f}% (per-point "
        + ", ".join(f"{d * 100:.2f}%" for d in devs)
        + f"), {elapsed:.2f}s"
    )
    report(2, ok, detail)
    assert ok, (
        "the exact sharp-wall action sits ~5.2% (in ln E) from the "
        "first-order formula at tau_p = 0.01; see notes/decisions.md"
    )


def test_criterion_03_cutoff_free_window():
    devs = []
    for tp in (1e-3, 3e-3):
        p = ModelParams(sigma_ratio=1e4, tau_p=tp, **BASE)
        sol = enhancement(p, CFG)
        ref = analytic_limit(p, AnalyticRegime.CUTOFF_FREE).enhancement
        ref_print = (0.81 * 1e4) ** (2.0 * 12.5 * tp / math.pi)
        devs.append(log_dev(sol.enhancement, ref))
        devs.append(log_dev(sol.enhancement, ref_print))
    worst = max(devs)
    ok = worst < 0.05
    assert report(3, ok, f"ln-dev vs Sigma>>V0 formula (exact k1 and printed 0.81): max {worst * 100:.2f}%")


def test_criterion_04_near_symmetric_window():
    devs = []
    for tp in (1e-3, 3e-3, 1e-2):
        p = ModelParams(sigma_ratio=0.01, tau_p=tp, **BASE)
        sol = enhancement(p, CFG)
        ref = math.exp(4.0 / math.pi * 12.5 * tp)
        devs.append(log_dev(sol.enhancement, ref))
    worst = max(devs)
    ok = worst < 0.05
    detail = (
        "ln-dev vs exp(4 V0 tau_p/pi) at Sigma=0.01V0: "
        + ", ".join(f"{d * 100:.2f}%" for d in devs)
    )
    report(4, ok, detail)
    assert ok, (
        "xi_B ~ 6 at Sigma = 0.01 V0 leaves an irreducible ~8% slope "
        "offset (the 1/xi_B^2 correction); see notes/decisions.md"
    )


def test_criterion_05_enhancement_curve_shapes():
    t0 = time.perf_counter()
    taus = np.geomspace(5e-3, 6e-2, 8)
    curves = {}
    for sig in (0.01, 1e4, INFINITE):
        vals = []
        for tp in taus:
            p = ModelParams(sigma_ratio=sig, tau_p=float(tp), **BASE)
            vals.append(enhancement(p, CFG).enhancement)
        curves[sig] = vals
    increasing = all(
        all(a < b for a, b in zip(v, v[1:])) for v in curves.values()
    )
    at_05 = {
        sig: enhancement(ModelParams(sigma_ratio=sig, tau_p=0.05, **BASE), CFG).enhancement
        for sig in (0.01, 1e4, INFINITE)
    }
    ordered = at_05[INFINITE] > at_05[1e4] > at_05[0.01]
    elapsed = time.perf_counter() - t0
    ok = increasing and ordered and elapsed < 30.0
    assert report(
        5, ok,
        f"all three E(tau_p) curves increasing={increasing}, ordering at "
        f"tau_p=0.05: inf={at_05[INFINITE]:.3g} > 1e4={at_05[1e4]:.3g} > "
        f"0.01={at_05[0.01]:.3g} ({ordered}), {elapsed:.1f}s",
    )


def test_criterion_06_position_only_suppression():
    gammas = np.linspace(0.15, 1.0, 6)
    vals = []
    for g in gammas:
        p = ModelParams(sigma_ratio=0.01, gamma=float(g), **BASE)
        vals.append(enhancement(p, CFG).enhancement)
    suppressed = all(v < 1.0 for v in vals)
    decreasing = all(a > b for a, b in zip(vals, vals[1:]))
    devs = []
    for g in (0.5, 1.0):
        p = ModelParams(sigma_ratio=0.01, gamma=g, **BASE)
        sol = enhancement(p, CFG)
        ref = analytic_limit(p, AnalyticRegime.POSITION_ONLY).enhancement
        devs.append(log_dev(sol.enhancement, ref))
    agree = max(devs) < 0.05
    ok = suppressed and decreasing and agree
    assert report(
        6, ok,
        f"E<1 and decreasing over gamma in (0,1]: {suppressed and decreasing}; "
        f"ln-dev vs position-only formula at gamma=0.5,1.0: "
        + ", ".join(f"{d * 100:.2f}%" for d in devs),
    )


def test_criterion_07_linked_ratio_non_monotonicity():
    t0 = time.perf_counter()
    gammas = np.geomspace(0.02, 3.0, 14)
    vals = []
    for g in gammas:
        p = ModelParams(sigma_ratio=2.0, gamma=float(g), tau_p=0.5 * float(g), **BASE)
        vals.append(enhancement(p, CFG).enhancement)
    i_max = int(np.argmax(vals))
    interior = 0 < i_max < len(vals) - 1
    above_one = vals[i_max] > 1.0
    falls = vals[-1] < vals[i_max]
    elapsed = time.perf_counter() - t0
    ok = interior and above_one and falls and elapsed < 60.0
    detail = (
        f"E(gamma) at Sigma=2V0, ratio 0.5: peak={vals[i_max]:.4g} at "
        f"gamma={gammas[i_max]:.3g}, E(0.02)={vals[0]:.4g}, "
        f"E(3)={vals[-1]:.3g}, interior_max={interior}, rises_above_1={above_one}, "
        f"{elapsed:.1f}s"
    )
    report(7, ok, detail)
    assert ok, (
        "at Sigma=2V0 with tau_p=0.5*gamma the curve is suppressed from "
        "gamma=0+ (no rise above 1); the stated shape appears at e.g. "
        "Sigma=20V0 (same ratio) or ratio 2 (same Sigma); see notes/decisions.md"
    )


def test_criterion_08_energy_loss():
    bare = energy_loss(ModelParams(sigma_ratio=1.0, **BASE), CFG).value
    elastic = bare < 1e-6
    bounded = True
    for kwargs in (dict(gamma=0.3), dict(tau_p=0.3), dict(gamma=1.0, tau_p=0.5)):
        p = ModelParams(sigma_ratio=1.0, **BASE, **kwargs)
        loss = energy_loss(p, CFG).value
        bounded &= 0.0 < loss <= p.sigma
    l_g = energy_loss(ModelParams(sigma_ratio=1.0, gamma=50.0, **BASE), CFG).value
    l_t = energy_loss(ModelParams(sigma_ratio=1.0, tau_p=50.0, **BASE), CFG).value
    saturates = abs(l_g - l_t) / l_t < 0.05
    diffs = []
    for sig in np.geomspace(1.0, 100.0, 8):
        lm = energy_loss(ModelParams(sigma_ratio=float(sig), tau_p=0.5, **BASE), CFG).value
        lp = energy_loss(ModelParams(sigma_ratio=float(sig), gamma=0.5, **BASE), CFG).value
        diffs.append(lm - lp)
    crossing = diffs[0] < 0.0 < diffs[-1]
    ok = elastic and bounded and saturates and crossing
    assert report(
        8, ok,
        f"elastic bare loss {bare:.1e}; bounded in (0, Sigma]; overdamped "
        f"pair {abs(l_g - l_t) / l_t * 100:.2f}%; momentum/position crossing "
        f"in (V0, 100V0): {crossing}",
    )


def test_criterion_09_prefactor():
    t0 = time.perf_counter()
    identity = prefactor_k(ModelParams(sigma_ratio=1.0, **BASE), CFG).k_ratio
    p_mixed = ModelParams(sigma_ratio=1.0, gamma=0.2, tau_p=0.1, **BASE)
    xi = solve_bounce_time(p_mixed, CFG)
    th = phases(p_mixed, 1.0, xi)
    hi = phases(p_mixed, 1e8, xi)
    lam_ratio = negative_eigenvalue(
        ModelParams(sigma_ratio=0.01, **BASE),
        bare_bounce_time(ModelParams(sigma_ratio=0.01, **BASE)), CFG,
    )
    enhanced = all(
        prefactor_k(ModelParams(sigma_ratio=1.0, tau_p=tp, **BASE), CFG).k_ratio > 1.0
        for tp in (0.05, 0.2)
    )
    elapsed = time.perf_counter() - t0
    ok = (
        abs(identity - 1.0) < 1e-6
        and th == (-math.pi, -math.pi)
        and abs(hi[0]) < 0.01 and abs(hi[1]) < 0.01
        and abs(lam_ratio - 0.01) / 0.01 < 0.2
        and enhanced
        and elapsed < 120.0
    )
    assert report(
        9, ok,
        f"K/K0(0)={identity:.8f}; phases at threshold {th}; high-lambda "
        f"decay ({hi[0]:.1e}, {hi[1]:.1e}); |l1|={lam_ratio:.4f} at "
        f"Sigma=0.01V0; K/K0>1 for tau_p in (0, 0.2]: {enhanced}; {elapsed:.0f}s",
    )


def test_criterion_10_smooth_barrier():
    from bouncerate import SmoothParams, matching_time, perturbative_action, slope_at_escape
    from bouncerate.smooth import slope_mapped_sigma

    tau1 = matching_time(SmoothParams(12.5, 1.0))
    tau1_ok = abs(tau1 - 3.0 * math.pi / 4.0) < 1e-8
    s20 = slope_at_escape(SmoothParams(12.5, 20.0))
    s140 = slope_at_escape(SmoothParams(12.5, 140.0))
    slopes_ok = abs(s20 + 100.0) < 1e-6 and abs(s140 + 700.0) < 1e-6
    sp = SmoothParams(12.5, 140.0)
    sig_map = slope_mapped_sigma(sp)
    devs = []
    for tp in (1e-3, 2.5e-3):
        _, enh = perturbative_action(sp, tp)
        ref = analytic_limit(
            ModelParams(sigma_ratio=sig_map, tau_p=tp, **BASE),
            AnalyticRegime.CUTOFF_FREE,
        ).enhancement
        devs.append(log_dev(enh, ref))
    agree = max(devs) < 0.10
    ok = tau1_ok and slopes_ok and agree
    assert report(
        10, ok,
        f"tau1(r=1)={tau1:.10f}; slopes {s20:.6f}/{s140:.6f}; smooth vs "
        f"slope-mapped formula ln-dev max {max(devs) * 100:.1f}% (tau_p <= 0.0025)",
    )


def test_criterion_11_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1234)
    worst = 0.0
    for _ in range(30):
        p = ModelParams(
            barrier_b=float(rng.uniform(5, 20)),
            sigma_ratio=float(10 ** rng.uniform(-2, 3)),
            gamma=float(rng.uniform(0, 0.6)),
            tau_p=float(rng.uniform(0, 0.3)),
            cutoff_w=float(10 ** rng.uniform(3, 4.5)),
        )
        xi = solve_bounce_time(p, CFG)
        le = bounce_lhs(xi, p, CFG)
        lq = bounce_lhs(xi, p, CFG, method="quadrature")
        ae = classical_action(p, xi, CFG)
        aq = classical_action(p, xi, CFG, method="quadrature")
        worst = max(worst, abs(le - lq) / abs(lq), abs(ae - aq) / abs(aq))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-7 and elapsed < 60.0
    assert report(
        11, ok,
        f"partial-fraction vs quadrature on 30 random sets: worst rel "
        f"{worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_12_eom_residual_and_saddle():
    p = ModelParams(sigma_ratio=1.0, gamma=0.1, tau_p=0.05, **BASE)
    xi = solve_bounce_time(p, CFG)
    tau = np.linspace(-160.0, 160.0, 64001)
    path = reconstruct_path(p, xi, tau, CFG)
    residual = eom_residual(path, p)
    crossing = p.a * p.s * bounce_lhs(xi, p, CFG)
    saddle = abs(crossing - p.a) / p.a
    ok = residual < 1e-4 and saddle < 1e-6
    assert report(
        12, ok,
        f"dissipative EOM residual {residual:.2e} (quarantine 0.1), saddle "
        f"identity |x(xi_B/2)-a|/a = {saddle:.2e}",
    )
