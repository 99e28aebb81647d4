import csv
from pathlib import Path
from typing import List

from loguru import logger

from noisytr.harness.experiment_model import ExperimentIOError
from noisytr.optim.driver_model import IterationRecord, Trace

TRACE_COLUMNS = [
    "iter", "f_true", "f_noisy", "gnorm_true", "gnorm_noisy",
    "delta", "rho", "accepted", "step_norm", "dist",
]


def _num(value: float) -> str:
    # repr round-trips floats exactly, including inf
    return repr(float(value))


def _row(rec: IterationRecord) -> dict:
    return {
        "iter": rec.k,
        "f_true": _num(rec.f_true),
        "f_noisy": _num(rec.f_noisy),
        "gnorm_true": _num(rec.grad_norm_true),
        "gnorm_noisy": _num(rec.grad_norm_noisy),
        "delta": _num(rec.delta),
        "rho": _num(rec.rho),
        "accepted": int(rec.accepted),
        "step_norm": _num(rec.step_norm),
        "dist": "" if rec.dist_to_solution is None else _num(rec.dist_to_solution),
    }


def write_trace_csv(trace: Trace, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            w = csv.DictWriter(f, fieldnames=TRACE_COLUMNS, lineterminator="\n")
            w.writeheader()
            for rec in trace.records:
                w.writerow(_row(rec))
    except OSError as e:
        error_msg = f"cannot write trace {path}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg) from e
    return path


def read_trace_csv(path: str | Path) -> List[IterationRecord]:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != TRACE_COLUMNS:
                raise ExperimentIOError(f"unexpected columns in {path}: {reader.fieldnames}")
            return [
                IterationRecord(
                    k=int(row["iter"]),
                    f_true=float(row["f_true"]),
                    f_noisy=float(row["f_noisy"]),
                    grad_norm_true=float(row["gnorm_true"]),
                    grad_norm_noisy=float(row["gnorm_noisy"]),
                    delta=float(row["delta"]),
                    rho=float(row["rho"]),
                    accepted=row["accepted"] == "1",
                    step_norm=float(row["step_norm"]),
                    dist_to_solution=float(row["dist"]) if row["dist"] else None,
                )
                for row in reader
            ]
    except OSError as e:
        error_msg = f"cannot read trace {path}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg) from e
