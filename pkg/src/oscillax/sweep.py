"""Threshold sweep engine: (family, N, s) cells, exponent fits, CSV output.

A sweep fixes (a, n, family, range) and walks dyadic frequency scales N and
regularities s.  The expensive numerator (the maximal field of the scale-N
profile, or its modulated local variants) depends on N but not on s, so it
is computed once per N and divided by the per-s Sobolev norms afterwards.

Cells are independent and may be distributed over worker processes.  When a
pool is used, OPENBLAS/MKL threading in the children is pinned to a single
thread before numpy loads, so cell results are bitwise independent of the
pool size; records are merged in canonical (family, N) order, making the
CSV output byte-identical for any worker count.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from .norms import (SweepRecord, converged_maximal_field, exponent_fit,
                    modulated_numerators, range_norm, sharpness_profile,
                    sobolev_norm)
from .oscillatory import SymbolParams

_CSV_COLUMNS = ("family", "a", "n", "s", "N", "range", "Q", "A", "converged")


@dataclass(frozen=True)
class SweepConfig:
    a: float
    n: int
    s_list: tuple
    N_list: tuple
    range_kind: str = "global"
    family: str = "shell"
    modulated: bool = False
    y_count: int = 16

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("a must be positive")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.s_list or not all(np.isfinite(self.s_list)):
            raise ValueError("s_list must be finite and nonempty")
        if not self.N_list or min(self.N_list) <= 0:
            raise ValueError("N_list must be positive")
        if self.range_kind not in ("local", "global"):
            raise ValueError("range must be 'local' or 'global'")
        if self.modulated and self.a >= 1:
            raise ValueError("the modulated average probe requires a < 1")

    def y_grid(self) -> np.ndarray:
        m = self.y_count
        return np.linspace(-1.0 + 1.0 / m, 1.0 - 1.0 / m, m)


def _cell_task(args):
    """Numerator data for one (family, N) cell; runs in a worker process."""
    cfg = SweepConfig(**args["config"])
    N = args["N"]
    p = SymbolParams(a=cfg.a, n=cfg.n, s=0.0)
    g = sharpness_profile(cfg.family, N, cfg.a)
    out = {"N": N}
    if cfg.modulated:
        y = cfg.y_grid()
        nums = modulated_numerators(g, p, y)
        out["y"] = y.tolist()
        out["numerators"] = nums.tolist()
        out["converged"] = True
        out["t_level"] = -1
        out["tail_fraction"] = 0.0
    else:
        fld = converged_maximal_field(g, p, local=(cfg.range_kind == "local"))
        out["norm"] = range_norm(fld, p, cfg.range_kind)
        out["converged"] = bool(fld.t_converged and fld.r_converged)
        out["t_level"] = fld.t_grid.level
        out["tail_fraction"] = fld.tail_fraction
    return out


def _pool_initializer():
    pass


def run_sweep(cfg: SweepConfig, workers: int = 0):
    """All sweep records plus fitted exponents per s.

    workers = 0 computes cells in-process; workers >= 1 always uses a spawn
    pool of exactly that size with single-threaded BLAS in the children.
    """
    tasks = [{"config": asdict(cfg), "N": float(N)} for N in sorted(cfg.N_list)]
    if workers and workers > 0:
        os.environ["OPENBLAS_NUM_THREADS"] = "1"
        os.environ["OMP_NUM_THREADS"] = "1"
        os.environ["MKL_NUM_THREADS"] = "1"
        ctx = mp.get_context("spawn")
        with ctx.Pool(processes=workers, initializer=_pool_initializer) as pool:
            results = pool.map(_cell_task, tasks)
    else:
        results = [_cell_task(t) for t in tasks]
    results.sort(key=lambda d: d["N"])

    records = []
    for res in results:
        N = res["N"]
        g = sharpness_profile(cfg.family, N, cfg.a)
        for s in cfg.s_list:
            p = SymbolParams(a=cfg.a, n=cfg.n, s=float(s))
            hs = sobolev_norm(g, cfg.n, float(s))
            if cfg.modulated:
                nums = np.asarray(res["numerators"])
                y = np.asarray(res["y"])
                avg = float(np.trapezoid(nums, y) / (y[-1] - y[0])) \
                    if y.size > 1 else float(nums[0])
                rec = SweepRecord(family=cfg.family, N=N, p=p,
                                  range_kind=cfg.range_kind,
                                  Q=math.sqrt(float(nums[-1])) / hs,
                                  A=avg / hs ** 2,
                                  converged=res["converged"],
                                  t_level=res["t_level"],
                                  tail_fraction=res["tail_fraction"])
            else:
                rec = SweepRecord(family=cfg.family, N=N, p=p,
                                  range_kind=cfg.range_kind,
                                  Q=res["norm"] / hs, A=None,
                                  converged=res["converged"],
                                  t_level=res["t_level"],
                                  tail_fraction=res["tail_fraction"])
            records.append(rec)

    records.sort(key=lambda r: (r.family, r.p.s, r.N))
    exponents = {}
    for s in cfg.s_list:
        sub = [r for r in records if r.p.s == float(s)]
        if len(sub) >= 4:
            exponents[f"{float(s):.6g}"] = exponent_fit(
                [r.N for r in sub], [r.fit_value for r in sub])
    return records, exponents


def format_float(x) -> str:
    return f"{float(x):.14e}"


def records_to_csv_lines(records) -> list[str]:
    lines = [",".join(_CSV_COLUMNS)]
    for r in records:
        lines.append(",".join([
            r.family,
            format_float(r.p.a),
            str(r.p.n),
            format_float(r.p.s),
            format_float(r.N),
            r.range_kind,
            format_float(r.Q),
            format_float(r.A) if r.A is not None else "nan",
            str(int(r.converged)),
        ]))
    return lines
