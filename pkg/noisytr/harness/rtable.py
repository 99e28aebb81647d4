"""
Accuracy diagnostic over a grid of noise levels.

For each (eps_f, eps_g) cell the noisy variant is run for every seed. Each
run tracks the rolling-25 minimum of its noisy gradient norm and contributes
the smallest such value seen during the run. The cell reports
R = log10(C / sum of those minima) with C the critical-region radius for
that cell.
"""
import csv
import math
from pathlib import Path
from typing import List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from noisytr.errors import NoisyTRError
from noisytr.harness.experiment import output_dir_for, run_traces, write_summary
from noisytr.harness.experiment_model import ExperimentConfig, ExperimentIOError
from noisytr.harness.rolling import rolling_min
from noisytr.optim.driver_model import RatioVariant
from noisytr.problems.registry import get_problem
from noisytr.theory.constants import compute_constants, curvature_bound, r_diagnostic
from noisytr.theory.diagnostics import min_true_gradient


class RTableCell(BaseModel):
    eps_f: float
    eps_g: float
    c_bound: float
    minima: List[float] = Field(default_factory=list, description="Per-seed smallest rolling-25 noisy gradient minimum over the run")
    min_true_gradients: List[float] = Field(default_factory=list)
    R: Optional[float] = None
    valid: bool = True
    contained: bool = True
    reason: Optional[str] = None


class RTableResult(BaseModel):
    problem: str
    eps_f_grid: List[float]
    eps_g_grid: List[float]
    cells: List[RTableCell]
    spread: Optional[float] = None
    all_finite: bool
    all_contained: bool
    table_file: Optional[str] = None
    summary_file: Optional[str] = None

    def cell(self, eps_f: float, eps_g: float) -> RTableCell:
        for c in self.cells:
            if c.eps_f == eps_f and c.eps_g == eps_g:
                return c
        raise KeyError((eps_f, eps_g))


def _cell(cfg: ExperimentConfig, eps_f: float, eps_g: float, workers: Optional[int]) -> RTableCell:
    obj = get_problem(cfg.problem.id)
    tr = cfg.trust_region
    M = curvature_bound(obj, cfg.noise.eps_B)
    c_bound = compute_constants(eps_f, eps_g, tr.c0, tr.c2, tr.nu, M).c1_radius

    cell_cfg = cfg.model_copy(update={
        "noise": cfg.noise.model_copy(update={"eps_f": eps_f, "eps_g": eps_g}),
        "experiment": cfg.experiment.model_copy(update={"variants": [RatioVariant.NOISY]}),
    })
    traces = run_traces(cell_cfg, workers=workers)

    cell = RTableCell(eps_f=eps_f, eps_g=eps_g, c_bound=c_bound)
    aborted = [t.noise.seed for t in traces if not t.completed]
    if aborted:
        cell.valid = False
        cell.reason = f"runs aborted for seeds {aborted}"
        logger.warning(f"[RTABLE] cell eps_f={eps_f:g}, eps_g={eps_g:g}: {cell.reason}")
        return cell

    cell.minima = [float(np.min(rolling_min(t.series("grad_norm_noisy")))) for t in traces]
    cell.min_true_gradients = [min_true_gradient(t) for t in traces]
    cell.contained = all(g <= c_bound for g in cell.min_true_gradients)
    try:
        cell.R = r_diagnostic(c_bound, cell.minima, expected_count=len(cfg.experiment.seeds))
    except NoisyTRError as e:
        cell.valid = False
        cell.reason = str(e)
    logger.info(f"[RTABLE] eps_f={eps_f:g}, eps_g={eps_g:g}: R={cell.R}, contained={cell.contained}")
    return cell


def write_rtable_csv(result: RTableResult, path: Path) -> Path:
    """Rows are eps_f, columns eps_g; invalid cells are written as nan."""
    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["eps_f\\eps_g"] + [repr(g) for g in result.eps_g_grid])
            for eps_f in result.eps_f_grid:
                row = [repr(eps_f)]
                for eps_g in result.eps_g_grid:
                    c = result.cell(eps_f, eps_g)
                    row.append(repr(c.R) if c.valid and c.R is not None else "nan")
                w.writerow(row)
    except OSError as e:
        error_msg = f"cannot write R table {path}: {e}"
        logger.error(f"[RTABLE] {error_msg}")
        raise ExperimentIOError(error_msg) from e
    return path


def r_table(cfg: ExperimentConfig, out_dir: Optional[str | Path] = None, workers: Optional[int] = None) -> RTableResult:
    """
    Build the R table over cfg.rtable's grid and write rtable.csv and
    rtable_summary.json.
    """
    cells = [
        _cell(cfg, eps_f, eps_g, workers)
        for eps_f in cfg.rtable.eps_f_grid
        for eps_g in cfg.rtable.eps_g_grid
    ]
    finite = [c.R for c in cells if c.valid and c.R is not None and math.isfinite(c.R)]
    result = RTableResult(
        problem=cfg.problem.id,
        eps_f_grid=cfg.rtable.eps_f_grid,
        eps_g_grid=cfg.rtable.eps_g_grid,
        cells=cells,
        spread=(max(finite) - min(finite)) if finite else None,
        all_finite=len(finite) == len(cells),
        all_contained=all(c.contained for c in cells if c.valid),
    )

    directory = output_dir_for(cfg, out_dir)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        error_msg = f"cannot create output directory {directory}: {e}"
        logger.error(f"[RTABLE] {error_msg}")
        raise ExperimentIOError(error_msg) from e

    result.table_file = str(write_rtable_csv(result, directory / "rtable.csv"))
    result.summary_file = str(directory / "rtable_summary.json")
    write_summary(result.model_dump(mode="json"), Path(result.summary_file))
    logger.info(f"[RTABLE] {cfg.problem.id}: spread={result.spread}, all_finite={result.all_finite}")
    return result
