"""Parameter sweeps with deterministic CSV emission.

Sweep points are evaluated independently (optionally in a process pool) and
gathered in deterministic order; per-point failures populate the error column
instead of aborting the sweep.  CSV output is byte-stable: fixed 12
significant digit formatting, sorted metadata in ``#`` comment headers, no
timestamps, LF line endings.
"""

from __future__ import annotations

import dataclasses
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .model import INFINITE, ModelParams, QuadratureConfig
from .path import energy_loss, escape_point
from .prefactor import prefactor_k
from .solver import enhancement

SWEEPABLE = ("gamma", "tau_p", "sigma_ratio", "cutoff_w")

_BASE_COLUMNS = ("x", "xi_b", "s_cl", "s_cl_bare", "enhancement", "x_esc", "delta_e")
_PREFACTOR_COLUMNS = ("ln_r", "lambda1", "k_ratio")


@dataclass(frozen=True)
class SweepSpec:
    param: str
    lo: float
    hi: float
    points: int
    baseline: ModelParams
    scale: str = "linear"
    linked_ratio: float | None = None

    def __post_init__(self) -> None:
        if self.param not in SWEEPABLE:
            raise ValueError(f"param must be one of {SWEEPABLE}")
        if not self.lo < self.hi:
            raise ValueError("sweep range requires lo < hi")
        if self.points < 2:
            raise ValueError("sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise ValueError("scale must be 'linear' or 'log'")
        if self.scale == "log" and self.lo <= 0.0:
            raise ValueError("log scale requires lo > 0")
        if self.linked_ratio is not None and self.param != "gamma":
            raise ValueError("linked-ratio mode is only valid when sweeping gamma")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)

    def params_at(self, value: float) -> ModelParams:
        kwargs = {self.param: float(value)}
        if self.linked_ratio is not None:
            kwargs["tau_p"] = self.linked_ratio * float(value)
        return replace(self.baseline, **kwargs)


@dataclass(frozen=True)
class SweepRow:
    x: float
    xi_b: float = math.nan
    s_cl: float = math.nan
    s_cl_bare: float = math.nan
    enhancement: float = math.nan
    x_esc: float = math.nan
    delta_e: float = math.nan
    ln_r: float = math.nan
    lambda1: float = math.nan
    k_ratio: float = math.nan
    error: str = ""


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    metadata: tuple[tuple[str, str], ...]
    include_prefactor: bool

    @property
    def n_failed(self) -> int:
        return sum(1 for r in self.rows if r.error)


def evaluate_point(
    p: ModelParams,
    cfg: QuadratureConfig,
    with_prefactor: bool = False,
    oracle: bool = False,
    x: float = math.nan,
) -> SweepRow:
    """Solve a single parameter point; exceptions become the error field."""
    method = "quadrature" if oracle else "expansion"
    try:
        sol = enhancement(p, cfg, method=method)
        fields = {
            "x": x,
            "xi_b": sol.xi_b,
            "s_cl": sol.s_cl,
            "s_cl_bare": sol.s_cl_bare,
            "enhancement": sol.enhancement,
        }
        if not p.is_sharp:
            fields["x_esc"] = escape_point(p, cfg)
            fields["delta_e"] = energy_loss(p, cfg).value
        if with_prefactor and not p.is_sharp:
            pre = prefactor_k(p, cfg)
            fields["ln_r"] = pre.ln_r
            fields["lambda1"] = pre.lambda1_abs
            fields["k_ratio"] = pre.k_ratio
        return SweepRow(**fields)
    except Exception as exc:  # per-row failure, never a silent gap
        return SweepRow(x=x, error=f"{type(exc).__name__}: {exc}")


def _worker(args) -> SweepRow:
    p, cfg, with_prefactor, oracle, x = args
    return evaluate_point(p, cfg, with_prefactor, oracle, x)


def run_sweep(
    spec: SweepSpec,
    cfg: QuadratureConfig | None = None,
    with_prefactor: bool = False,
    oracle: bool = False,
    jobs: int = 1,
) -> SweepResult:
    cfg = cfg or QuadratureConfig()
    values = spec.values()
    tasks = [(spec.params_at(v), cfg, with_prefactor, oracle, float(v)) for v in values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_worker, tasks))
    else:
        rows = tuple(_worker(t) for t in tasks)
    meta = sweep_metadata(spec, cfg, with_prefactor, oracle)
    return SweepResult(rows=rows, metadata=meta, include_prefactor=with_prefactor)


def sweep_metadata(
    spec: SweepSpec,
    cfg: QuadratureConfig,
    with_prefactor: bool,
    oracle: bool,
) -> tuple[tuple[str, str], ...]:
    b = spec.baseline
    return (
        ("tool", f"bouncerate {__version__}"),
        ("sweep", f"param={spec.param} lo={spec.lo:.12g} hi={spec.hi:.12g} "
                  f"points={spec.points} scale={spec.scale} "
                  f"linked_ratio={'' if spec.linked_ratio is None else format(spec.linked_ratio, '.12g')}"),
        ("baseline", f"v0={b.barrier_b:.12g} sigma={format_sigma(b.sigma_ratio)} "
                     f"gamma={b.gamma:.12g} tau_p={b.tau_p:.12g} cutoff={b.cutoff_w:.12g}"),
        ("tolerances", f"rel_tol={cfg.rel_tol:.12g} abs_tol={cfg.abs_tol:.12g} "
                       f"max_depth={cfg.max_depth} tail_mult={cfg.tail_mult:.12g}"),
        ("mode", f"prefactor={int(with_prefactor)} oracle={int(oracle)}"),
    )


def format_sigma(sigma_ratio: float) -> str:
    return "inf" if math.isinf(sigma_ratio) else format(sigma_ratio, ".12g")


def _fmt(value: float) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return format(value, ".12g")


def render_csv(result: SweepResult) -> str:
    """Deterministic CSV text: # headers, fixed column order, %.12g fields."""
    out = io.StringIO()
    for key, val in result.metadata:
        out.write(f"# {key}: {val}\n")
    columns = _BASE_COLUMNS + (
        _PREFACTOR_COLUMNS if result.include_prefactor else ()
    ) + ("error",)
    out.write(",".join(columns) + "\n")
    for row in result.rows:
        vals = [_fmt(getattr(row, c)) for c in columns[:-1]]
        vals.append(row.error)
        out.write(",".join(vals) + "\n")
    return out.getvalue()


def write_csv(result: SweepResult, path) -> None:
    text = render_csv(result)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def solve_report(
    p: ModelParams,
    cfg: QuadratureConfig,
    with_prefactor: bool = False,
    oracle: bool = False,
) -> tuple[str, SweepRow]:
    """Aligned single-point report text plus the underlying row."""
    row = evaluate_point(p, cfg, with_prefactor, oracle)
    if row.error:
        raise RuntimeError(row.error)
    lines = [
        ("barrier height V0/hw0", f"{p.barrier_b:.12g}"),
        ("asymmetry Sigma/V0", format_sigma(p.sigma_ratio)),
        ("position coupling gamma", f"{p.gamma:.12g}"),
        ("momentum coupling tau_p", f"{p.tau_p:.12g}"),
        ("cutoff omega_c", f"{p.cutoff_w:.12g}"),
        ("bounce time xi_B", f"{row.xi_b:.12g}"),
        ("action S_cl", f"{row.s_cl:.12g}"),
        ("bare action S_cl0", f"{row.s_cl_bare:.12g}"),
        ("enhancement E", f"{row.enhancement:.12g}"),
    ]
    if not p.is_sharp:
        lines.append(("escape point x_esc", f"{row.x_esc:.12g}"))
        lines.append(("energy loss <dE>", f"{row.delta_e:.12g}"))
    if with_prefactor and not p.is_sharp:
        lines.append(("determinant ln R", f"{row.ln_r:.12g}"))
        lines.append(("negative eigenvalue |l1|", f"{row.lambda1:.12g}"))
        lines.append(("prefactor K/K0", f"{row.k_ratio:.12g}"))
    width = max(len(k) for k, _ in lines)
    text = "\n".join(f"{k:<{width}}  {v}" for k, v in lines)
    return text, row


def single_row_result(
    p: ModelParams,
    cfg: QuadratureConfig,
    row: SweepRow,
    with_prefactor: bool,
    oracle: bool,
) -> SweepResult:
    meta = (
        ("tool", f"bouncerate {__version__}"),
        ("solve", f"v0={p.barrier_b:.12g} sigma={format_sigma(p.sigma_ratio)} "
                  f"gamma={p.gamma:.12g} tau_p={p.tau_p:.12g} cutoff={p.cutoff_w:.12g}"),
        ("tolerances", f"rel_tol={cfg.rel_tol:.12g} abs_tol={cfg.abs_tol:.12g} "
                       f"max_depth={cfg.max_depth} tail_mult={cfg.tail_mult:.12g}"),
        ("mode", f"prefactor={int(with_prefactor)} oracle={int(oracle)}"),
    )
    return SweepResult(rows=(row,), metadata=meta, include_prefactor=with_prefactor)
