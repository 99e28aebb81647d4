import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from filelock import FileLock
from loguru import logger
from pydantic import BaseModel, Field

from noisytr.config import settings
from noisytr.errors import ConfigError, NoisyTRError
from noisytr.harness.experiment_model import ExperimentConfig, ExperimentIOError, X0Policy
from noisytr.harness.plotting import emit_plot_series
from noisytr.harness.rolling import rolling_min
from noisytr.harness.trace_io import write_trace_csv
from noisytr.noise.noise_model import NoiseSpec
from noisytr.noise.noise_stream import counter_generator
from noisytr.optim.driver import run
from noisytr.optim.driver_model import Trace, TrustRegionConfig
from noisytr.problems.objective import Objective
from noisytr.problems.registry import get_problem
from noisytr.theory.constants import compute_constants, curvature_bound
from noisytr.theory.diagnostics import min_true_gradient


class RunSummary(BaseModel):
    problem: str
    seed: int
    variant: str
    iterations: int
    completed: bool
    error: Optional[str] = None
    final_f_true: Optional[float] = None
    final_delta: Optional[float] = None
    min_gnorm_true: Optional[float] = None
    final_min25_true: Optional[float] = None
    final_min25_noisy: Optional[float] = None
    accepted_steps: int = 0
    c1_radius: Optional[float] = None
    contained: Optional[bool] = None


class ExperimentResult(BaseModel):
    output_dir: str
    trace_files: List[str] = Field(default_factory=list)
    plot_files: List[str] = Field(default_factory=list)
    summary_file: str
    runs: List[RunSummary] = Field(default_factory=list)
    traces: List[Trace] = Field(default_factory=list, exclude=True)


def problem_slug(problem_id: str) -> str:
    return problem_id.strip().lower().replace(":", "-")


def resolve_x0(cfg: ExperimentConfig, obj: Objective, seed: int) -> np.ndarray:
    """Starting point for one seed; the box draw is keyed by the seed so paired runs share it."""
    policy = cfg.problem.x0
    if policy == X0Policy.EXPLICIT:
        x0 = np.asarray(cfg.problem.x0_values, dtype=float)
        if x0.size != obj.dimension:
            message = f"has length {x0.size}, {obj.name} has dimension {obj.dimension}"
            logger.error(f"[HARNESS] problem.x0_values {message}")
            raise ConfigError(message, field="problem.x0_values")
        return x0
    if policy == X0Policy.DEFAULT and obj.default_start is not None:
        return obj.default_start
    half_width = cfg.problem.x0_half_width
    return counter_generator(seed, 0, "x0").uniform(-half_width, half_width, size=obj.dimension)


def _run_job(job: Tuple[str, np.ndarray, NoiseSpec, TrustRegionConfig, bool]) -> Trace:
    problem_id, x0, noise, tr_config, keep_iterates = job
    return run(get_problem(problem_id), noise, tr_config, x0, keep_iterates=keep_iterates)


def run_traces(cfg: ExperimentConfig, workers: Optional[int] = None, keep_iterates: bool = False) -> List[Trace]:
    """
    Run every (seed, variant) pair of an experiment.

    Results come back in (seed, variant) order whatever the scheduling.
    """
    obj = get_problem(cfg.problem.id)
    jobs = []
    for seed in cfg.experiment.seeds:
        x0 = resolve_x0(cfg, obj, seed)
        for variant in cfg.experiment.variants:
            jobs.append((cfg.problem.id, x0, cfg.noise_for_seed(seed), cfg.variant_config(variant), keep_iterates))

    workers = settings.WORKERS if workers is None else workers
    logger.info(f"[HARNESS] {cfg.experiment.name}: {len(jobs)} runs on {cfg.problem.id} with {workers} worker(s)")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            return list(pool.map(_run_job, jobs))
    return [_run_job(job) for job in jobs]


def _c1_radius(cfg: ExperimentConfig, obj: Objective) -> Optional[float]:
    try:
        M = curvature_bound(obj, cfg.noise.eps_B)
        tc = compute_constants(
            cfg.noise.eps_f, cfg.noise.eps_g, cfg.trust_region.c0, cfg.trust_region.c2, cfg.trust_region.nu, M
        )
    except NoisyTRError as e:
        logger.warning(f"[HARNESS] no theory constants for {obj.name}: {e}")
        return None
    return tc.c1_radius


def summarize(trace: Trace, c1_radius: Optional[float]) -> RunSummary:
    summary = RunSummary(
        problem=trace.problem,
        seed=trace.noise.seed,
        variant=trace.variant.value,
        iterations=len(trace.records),
        completed=trace.completed,
        error=trace.error,
        final_delta=trace.final_delta,
        accepted_steps=sum(1 for rec in trace.records if rec.accepted),
        c1_radius=c1_radius,
    )
    if trace.records:
        summary.final_f_true = trace.records[-1].f_true
        summary.min_gnorm_true = min_true_gradient(trace)
        summary.final_min25_true = float(rolling_min(trace.series("grad_norm_true"))[-1])
        summary.final_min25_noisy = float(rolling_min(trace.series("grad_norm_noisy"))[-1])
        if c1_radius is not None:
            summary.contained = summary.min_gnorm_true <= c1_radius
    return summary


def write_summary(payload: dict, path: Path) -> Path:
    """Single-writer JSON summary, serialised through a file lock."""
    lock = FileLock(str(path) + ".lock")
    try:
        with lock:
            with path.open("w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, sort_keys=True)
                f.write("\n")
    except OSError as e:
        error_msg = f"cannot write summary {path}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg) from e
    return path


def output_dir_for(cfg: ExperimentConfig, out_dir: Optional[str | Path] = None) -> Path:
    if out_dir is not None:
        return Path(out_dir)
    if cfg.experiment.output_dir:
        return Path(cfg.experiment.output_dir)
    return Path(settings.OUTPUT_DIR) / cfg.experiment.name


def run_experiment(cfg: ExperimentConfig, out_dir: Optional[str | Path] = None, workers: Optional[int] = None) -> ExperimentResult:
    """
    Run the seed sweep of an experiment and write its files.

    Writes one trace CSV per (variant, seed), one plot (SVG plus tidy CSV)
    per seed when plots are enabled, and summary.json.

    Args:
        cfg: Validated experiment config
        out_dir: Output directory override
        workers: Process count override (default settings.WORKERS)

    Returns:
        ExperimentResult listing written files and per-run statistics
    """
    directory = output_dir_for(cfg, out_dir)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        error_msg = f"cannot create output directory {directory}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg) from e

    obj = get_problem(cfg.problem.id)
    traces = run_traces(cfg, workers=workers)
    c1_radius = _c1_radius(cfg, obj)
    slug = problem_slug(cfg.problem.id)

    result = ExperimentResult(output_dir=str(directory), summary_file=str(directory / "summary.json"), traces=traces)
    for trace in traces:
        path = write_trace_csv(trace, directory / f"{slug}_{trace.variant.value}_s{trace.noise.seed}.csv")
        result.trace_files.append(str(path))
        result.runs.append(summarize(trace, c1_radius))

    if cfg.experiment.plots:
        for seed in cfg.experiment.seeds:
            paired = [t for t in traces if t.noise.seed == seed]
            result.plot_files.extend(str(p) for p in emit_plot_series(paired, directory, f"{slug}_s{seed}"))

    payload = {
        "experiment": cfg.experiment.name,
        "config": cfg.model_dump(mode="json"),
        "c1_radius": c1_radius,
        "runs": [run_summary.model_dump(mode="json") for run_summary in result.runs],
    }
    write_summary(payload, Path(result.summary_file))
    failed = [r for r in result.runs if r.error]
    logger.info(
        f"[HARNESS] {cfg.experiment.name}: wrote {len(result.trace_files)} traces to {directory}"
        + (f", {len(failed)} aborted" if failed else "")
    )
    return result
