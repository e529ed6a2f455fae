"""Desk-scale reproduction of the published figure datasets.

Each figure command bakes in the corresponding parameter protocol, writes one
CSV per curve, a JSON manifest listing curves and parameters, and a companion
matplotlib script (plain text; nothing is rendered here).  All datasets use
V₀/ħω₀ = 12.5 and ω_c = 8000 ω₀ unless the protocol says otherwise.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .model import INFINITE, ModelParams, QuadratureConfig
from .prefactor import prefactor_k
from .smooth import SmoothParams, perturbative_action, slope_mapped_sigma
from .solver import AnalyticRegime, analytic_limit
from .sweep import (
    SweepResult,
    SweepRow,
    SweepSpec,
    format_sigma,
    run_sweep,
    write_csv,
)

FIGURES = (
    "fig1b", "fig3b", "fig3c", "fig3d", "fig4b",
    "appC-K", "appD-a", "appD-b", "appE-b", "appE-d",
)

_BASE = dict(barrier_b=12.5, cutoff_w=8000.0)


def _write_simple_csv(path: Path, header: list[str], rows: list[list[float]], meta: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format(v, ".12g") for v in row) + "\n")


def _write_manifest(outdir: Path, name: str, curves: list[dict]) -> Path:
    path = outdir / f"{name}_manifest.json"
    payload = {"figure": name, "curves": curves}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _write_plot_script(outdir: Path, name: str, curves: list[dict], xlabel: str,
                       ylabel: str, logx: bool, logy: bool, ycol: str = "enhancement") -> Path:
    lines = [
        "# Companion plot script (run separately; the tool itself renders nothing).",
        "import numpy as np",
        "import matplotlib.pyplot as plt",
        "",
        "",
        "def load(path, *cols):",
        "    with open(path, encoding='utf-8') as fh:",
        "        rows = [l.rstrip('\\n') for l in fh if not l.startswith('#')]",
        "    names = rows[0].split(',')",
        "    idx = [names.index(c) for c in cols]",
        "    data = []",
        "    for row in rows[1:]:",
        "        parts = row.split(',')",
        "        try:",
        "            data.append([float(parts[i]) for i in idx])",
        "        except ValueError:",
        "            continue",
        "    return np.array(data).T",
        "",
        "",
        "fig, ax = plt.subplots(figsize=(5, 4))",
    ]
    for c in curves:
        style = c.get("style", "-")
        xc, yc = c.get("xcol", "x"), c.get("ycol", ycol)
        lines += [
            f"x, y = load({c['file']!r}, {xc!r}, {yc!r})",
            f"ax.plot(x, y, {style!r}, label={c['label']!r})",
        ]
    if logx:
        lines.append("ax.set_xscale('log')")
    if logy:
        lines.append("ax.set_yscale('log')")
    lines += [
        f"ax.set_xlabel({xlabel!r})",
        f"ax.set_ylabel({ylabel!r})",
        "ax.legend(fontsize=8)",
        "fig.tight_layout()",
        f"fig.savefig('{name}.png', dpi=200)",
    ]
    path = outdir / f"{name}_plot.py"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _sweep_curve(outdir, name, label, spec, cfg, jobs, with_prefactor=False) -> dict:
    result = run_sweep(spec, cfg, with_prefactor=with_prefactor, jobs=jobs)
    fname = f"{name}_{label}.csv"
    write_csv(result, outdir / fname)
    b = spec.baseline
    return {
        "label": label,
        "file": fname,
        "params": {
            "v0": b.barrier_b, "sigma": format_sigma(b.sigma_ratio),
            "gamma": b.gamma, "tau_p": b.tau_p, "cutoff": b.cutoff_w,
            "sweep": spec.param, "scale": spec.scale,
            "linked_ratio": spec.linked_ratio,
        },
        "n_failed": result.n_failed,
    }


def fig1b(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """ℰ(τ_p) at γ = 0 for Σ/V₀ ∈ {0.01, 10⁴, ∞} plus two dotted analytic
    limits (cutoff-limited sharp wall and the cutoff-free Σ ≫ V₀ base)."""
    curves = []
    taus = np.geomspace(1e-4, 6e-2, 25)
    for sig, label in ((0.01, "sigma_0.01"), (1e4, "sigma_1e4"), (INFINITE, "sigma_inf")):
        base = ModelParams(sigma_ratio=sig, **_BASE)
        spec = SweepSpec("tau_p", 1e-4, 6e-2, 25, base, scale="log")
        curves.append(_sweep_curve(outdir, "fig1b", label, spec, cfg, jobs))

    for regime, label in (
        (AnalyticRegime.SHARP_WEAK, "dotted_sharp_weak"),
        (AnalyticRegime.CUTOFF_FREE, "dotted_cutoff_free"),
    ):
        sig = INFINITE if regime is AnalyticRegime.SHARP_WEAK else 1e4
        rows = []
        for tp in taus:
            p = ModelParams(sigma_ratio=sig, tau_p=float(tp), **_BASE)
            rows.append([float(tp), analytic_limit(p, regime).enhancement])
        fname = f"fig1b_{label}.csv"
        _write_simple_csv(
            outdir / fname, ["x", "enhancement"], rows,
            [f"analytic limit {regime.value} at sigma={format_sigma(sig)}"],
        )
        curves.append({"label": label, "file": fname, "style": ":",
                       "params": {"regime": regime.value, "sigma": format_sigma(sig)}})
    return curves


def _fig3_curves(outdir, name, sigmas_ratios, cfg, jobs) -> list[dict]:
    curves = []
    for sig, ratio, label in sigmas_ratios:
        base = ModelParams(sigma_ratio=sig, **_BASE)
        spec = SweepSpec("gamma", 0.02, 3.0, 25, base, scale="log", linked_ratio=ratio)
        curves.append(_sweep_curve(outdir, name, label, spec, cfg, jobs))
    return curves


def fig3b(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """ℰ(γ) at fixed ratio τ_p/γ = 0.5 for several barrier shapes, with the
    intermediate-regime analytic curve for the sharpest one (dashed)."""
    curves = _fig3_curves(
        outdir, "fig3b",
        [(0.5, 0.5, "sigma_0.5"), (2.0, 0.5, "sigma_2"), (20.0, 0.5, "sigma_20")],
        cfg, jobs,
    )
    gammas = np.geomspace(0.02, 3.0, 25)
    rows = []
    for g in gammas:
        p = ModelParams(sigma_ratio=20.0, gamma=float(g), tau_p=0.5 * float(g), **_BASE)
        rows.append([float(g), analytic_limit(p, AnalyticRegime.INTERMEDIATE).enhancement])
    fname = "fig3b_dashed_intermediate.csv"
    _write_simple_csv(outdir / fname, ["x", "enhancement"], rows,
                      ["intermediate-regime analytic curve at sigma=20"])
    curves.append({"label": "dashed_intermediate", "file": fname, "style": "--",
                   "params": {"sigma": "20", "ratio": 0.5}})
    return curves


def fig3c(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """ℰ(γ) at Σ = 2V₀ for several momentum-to-position coupling ratios."""
    return _fig3_curves(
        outdir, "fig3c",
        [(2.0, 0.25, "ratio_0.25"), (2.0, 0.5, "ratio_0.5"),
         (2.0, 1.0, "ratio_1"), (2.0, 2.0, "ratio_2"), (2.0, 5.0, "ratio_5")],
        cfg, jobs,
    )


def fig3d(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """ℰ on a (Σ, γ) grid at fixed ratio 0.5 (long-form CSV)."""
    sigmas = np.geomspace(0.1, 100.0, 15)
    gammas = np.geomspace(0.02, 3.0, 15)
    rows = []
    for sig in sigmas:
        base = ModelParams(sigma_ratio=float(sig), **_BASE)
        spec = SweepSpec("gamma", 0.02, 3.0, 15, base, scale="log", linked_ratio=0.5)
        res = run_sweep(spec, cfg, jobs=jobs)
        for g, row in zip(gammas, res.rows):
            rows.append([float(sig), float(g), row.enhancement,
                         row.s_cl, row.s_cl_bare])
    fname = "fig3d_grid.csv"
    _write_simple_csv(
        outdir / fname,
        ["sigma_ratio", "gamma", "enhancement", "s_cl", "s_cl_bare"],
        rows, ["E(Sigma, gamma) grid at ratio tau_p/gamma = 0.5"],
    )
    return [{"label": "grid", "file": fname, "xcol": "gamma", "ycol": "enhancement",
             "params": {"ratio": 0.5}}]


def fig4b(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """⟨ΔE⟩(Σ) for both couplings, momentum only, and position only."""
    curves = []
    for g, tp, label in ((0.5, 0.5, "both"), (0.0, 0.5, "momentum_only"), (0.5, 0.0, "position_only")):
        base = ModelParams(gamma=g, tau_p=tp, sigma_ratio=1.0, **_BASE)
        spec = SweepSpec("sigma_ratio", 0.1, 100.0, 20, base, scale="log")
        c = _sweep_curve(outdir, "fig4b", label, spec, cfg, jobs)
        c["ycol"] = "delta_e"
        curves.append(c)
    return curves


def appC_K(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """Prefactor ingredients vs γ at ratio τ_p/γ = 0.5: R/R₀, A/A₀ (inverse
    Jacobian norms), |λ₁⁰|/|λ₁|, and K/K₀, for several Σ."""
    curves = []
    gammas = np.geomspace(0.05, 0.6, 6)
    for sig, label in ((0.01, "sigma_0.01"), (1.0, "sigma_1"), (10.0, "sigma_10")):
        rows = []
        for g in gammas:
            p = ModelParams(sigma_ratio=sig, gamma=float(g), tau_p=0.5 * float(g), **_BASE)
            pre = prefactor_k(p, cfg)
            rows.append([
                float(g), pre.r_ratio, pre.a_ratio,
                pre.lambda1_bare / pre.lambda1_abs, pre.k_ratio,
            ])
        fname = f"appC-K_{label}.csv"
        _write_simple_csv(
            outdir / fname,
            ["gamma", "r_ratio", "a_ratio", "lambda_ratio", "k_ratio"],
            rows, [f"prefactor ratios at sigma={sig} ratio=0.5"],
        )
        curves.append({"label": label, "file": fname, "xcol": "gamma",
                       "ycol": "k_ratio", "params": {"sigma": sig, "ratio": 0.5}})
    return curves


def appD_a(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """⟨ΔE⟩ vs coupling strength for pure position (c_s = γ) and pure
    momentum (c_s = τ_p) dissipation at Σ ∈ {V₀, 10V₀}; the two saturate to
    the same overdamped value."""
    curves = []
    for sig in (1.0, 10.0):
        for param, label in (("gamma", f"position_sigma_{sig:g}"), ("tau_p", f"momentum_sigma_{sig:g}")):
            base = ModelParams(sigma_ratio=sig, **_BASE)
            spec = SweepSpec(param, 0.05, 50.0, 20, base, scale="log")
            c = _sweep_curve(outdir, "appD-a", label, spec, cfg, jobs)
            c["ycol"] = "delta_e"
            curves.append(c)
    return curves


def appD_b(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """Saturation of ⟨ΔE⟩(Σ) for pure momentum dissipation at different ω_c."""
    curves = []
    for wc in (800.0, 8000.0, 80000.0):
        base = ModelParams(barrier_b=12.5, sigma_ratio=1.0, tau_p=0.5, cutoff_w=wc)
        spec = SweepSpec("sigma_ratio", 0.1, 1000.0, 20, base, scale="log")
        c = _sweep_curve(outdir, "appD-b", f"cutoff_{wc:g}", spec, cfg, jobs)
        c["ycol"] = "delta_e"
        curves.append(c)
    return curves


def appE_b(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """Smooth-barrier perturbative ℰ(τ_p) for frequency ratios 1, 2, 20, 140."""
    curves = []
    taus = np.linspace(0.0, 0.01, 11)
    for r in (1.0, 2.0, 20.0, 140.0):
        sp = SmoothParams(12.5, r)
        rows = []
        for tp in taus:
            action, enh = perturbative_action(sp, float(tp))
            rows.append([float(tp), action, enh])
        fname = f"appE-b_r_{r:g}.csv"
        _write_simple_csv(outdir / fname, ["x", "action", "enhancement"], rows,
                          [f"smooth barrier, omega_B/omega_0 = {r:g}"])
        curves.append({"label": f"r_{r:g}", "file": fname,
                       "params": {"freq_ratio": r, "v0": 12.5}})
    return curves


def appE_d(outdir: Path, cfg: QuadratureConfig, jobs: int) -> list[dict]:
    """Smooth r = 140 vs the cutoff-free formula at the slope-mapped Σ."""
    sp = SmoothParams(12.5, 140.0)
    sig_map = slope_mapped_sigma(sp)
    taus = np.geomspace(2e-4, 4e-3, 12)
    rows_smooth, rows_eq8 = [], []
    for tp in taus:
        _, enh = perturbative_action(sp, float(tp))
        rows_smooth.append([float(tp), enh])
        p = ModelParams(sigma_ratio=sig_map, tau_p=float(tp), **_BASE)
        rows_eq8.append([float(tp), analytic_limit(p, AnalyticRegime.CUTOFF_FREE).enhancement])
    _write_simple_csv(outdir / "appE-d_smooth_r_140.csv", ["x", "enhancement"],
                      rows_smooth, ["smooth barrier, omega_B/omega_0 = 140"])
    _write_simple_csv(outdir / "appE-d_cutoff_free.csv", ["x", "enhancement"],
                      rows_eq8, [f"cutoff-free formula at slope-mapped sigma={sig_map:g}"])
    return [
        {"label": "smooth_r_140", "file": "appE-d_smooth_r_140.csv", "params": {"freq_ratio": 140}},
        {"label": "cutoff_free", "file": "appE-d_cutoff_free.csv", "style": ":",
         "params": {"sigma": sig_map}},
    ]


_BUILDERS = {
    "fig1b": (fig1b, "tau_p", "enhancement E", True, True),
    "fig3b": (fig3b, "gamma", "enhancement E", True, True),
    "fig3c": (fig3c, "gamma", "enhancement E", True, True),
    "fig3d": (fig3d, "gamma", "enhancement E", True, True),
    "fig4b": (fig4b, "sigma/V0", "energy loss <dE>", True, False),
    "appC-K": (appC_K, "gamma", "K/K0", False, False),
    "appD-a": (appD_a, "coupling strength", "energy loss <dE>", True, False),
    "appD-b": (appD_b, "sigma/V0", "energy loss <dE>", True, False),
    "appE-b": (appE_b, "tau_p", "enhancement E", False, False),
    "appE-d": (appE_d, "tau_p", "enhancement E", True, True),
}


def run_figure(name: str, outdir, cfg: QuadratureConfig | None = None, jobs: int = 1) -> list[Path]:
    """Produce the dataset files for one named figure; returns written paths."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown figure {name!r}; valid names: {', '.join(FIGURES)}")
    cfg = cfg or QuadratureConfig()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    builder, xlabel, ylabel, logx, logy = _BUILDERS[name]
    curves = builder(outdir, cfg, jobs)
    written = [outdir / c["file"] for c in curves]
    written.append(_write_manifest(outdir, name, curves))
    written.append(_write_plot_script(outdir, name, curves, xlabel, ylabel, logx, logy))
    return written
