import csv
from pathlib import Path
from typing import List, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from loguru import logger  # noqa: E402

from noisytr.config import settings  # noqa: E402
from noisytr.harness.experiment_model import ExperimentIOError  # noqa: E402
from noisytr.harness.rolling import rolling_min  # noqa: E402
from noisytr.optim.driver_model import Trace  # noqa: E402

RHO_CLIP = 5.0
SERIES_COLUMNS = ["iter", "variant", "series", "value"]


def clip_rho(rho: Sequence[float]) -> np.ndarray:
    """Plotted ratios are clipped to [-5, 5]; stored traces are not."""
    return np.clip(np.asarray(rho, dtype=float), -RHO_CLIP, RHO_CLIP)


def plot_series(trace: Trace) -> dict:
    """Named per-iteration series drawn for one trace."""
    g_true = trace.series("grad_norm_true")
    g_noisy = trace.series("grad_norm_noisy")
    series = {
        "gnorm_true": g_true,
        "gnorm_true_min25": rolling_min(g_true),
        "gnorm_noisy": g_noisy,
        "gnorm_noisy_min25": rolling_min(g_noisy),
        "delta": trace.series("delta"),
        "rho_clipped": clip_rho(trace.series("rho")),
    }
    if trace.records and all(rec.dist_to_solution is not None for rec in trace.records):
        series["dist"] = trace.series("dist_to_solution")
    return series


def _write_series_csv(traces: List[Trace], path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=SERIES_COLUMNS, lineterminator="\n")
        w.writeheader()
        for trace in traces:
            variant = trace.variant.value
            for name, values in plot_series(trace).items():
                for k, v in enumerate(values):
                    w.writerow({"iter": k, "variant": variant, "series": name, "value": repr(float(v))})


def emit_plot_series(traces: Union[Trace, Sequence[Trace]], out_dir: str | Path, stem: str) -> List[Path]:
    """
    Draw gradient norm, radius, distance to solution and clipped ratio panels.

    Paired traces of one seed share the panels. The distance panel is
    omitted when the minimizer is unknown. Writes <stem>.svg and the same
    data as a tidy <stem>_series.csv.

    Returns:
        Paths of the written files
    """
    if isinstance(traces, Trace):
        traces = [traces]
    traces = list(traces)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    svg_path = out_dir / f"{stem}.svg"
    csv_path = out_dir / f"{stem}_series.csv"

    has_dist = all("dist" in plot_series(t) for t in traces)
    panels = ["gnorm", "delta"] + (["dist"] if has_dist else []) + ["rho"]

    matplotlib.rcParams["svg.hashsalt"] = settings.SVG_HASH_SALT
    fig, axes = plt.subplots(len(panels), 1, figsize=(7, 2.4 * len(panels)), sharex=True, constrained_layout=True)
    for trace in traces:
        series = plot_series(trace)
        label = trace.variant.value
        iters = np.arange(len(trace.records))
        for ax, panel in zip(axes, panels):
            if panel == "gnorm":
                ax.semilogy(iters, series["gnorm_true"], alpha=0.4, label=f"{label} |g|")
                ax.semilogy(iters, series["gnorm_true_min25"], label=f"{label} min25 |g|")
            elif panel == "delta":
                ax.semilogy(iters, series["delta"], label=label)
            elif panel == "dist":
                ax.semilogy(iters, series["dist"], label=label)
            else:
                ax.plot(iters, series["rho_clipped"], ".", markersize=3, label=label)

    eps_g = traces[0].noise.eps_g
    for ax, panel in zip(axes, panels):
        if panel == "gnorm" and eps_g > 0.0:
            ax.axhline(eps_g, color="k", linestyle="--", linewidth=0.8, label="eps_g")
        ax.set_ylabel({"gnorm": "gradient norm", "delta": "radius", "dist": "distance", "rho": "rho"}[panel])
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best", fontsize=7)
    axes[-1].set_xlabel("iteration")
    axes[0].set_title(traces[0].problem)

    try:
        fig.savefig(svg_path, metadata={"Date": None})
        _write_series_csv(traces, csv_path)
    except OSError as e:
        error_msg = f"cannot write plot files for {stem}: {e}"
        logger.error(f"[PLOT] {error_msg}")
        raise ExperimentIOError(error_msg) from e
    finally:
        plt.close(fig)

    logger.debug(f"[PLOT] wrote {svg_path.name} with panels {panels}")
    return [svg_path, csv_path]
