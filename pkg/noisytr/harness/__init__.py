from noisytr.harness.experiment_model import (
    ExperimentConfig,
    ExperimentIOError,
    X0Policy,
    load_config,
    load_config_text,
    validate_config,
)
from noisytr.harness.rolling import ROLLING_WINDOW, RollingMinSeries, rolling_min
from noisytr.harness.trace_io import TRACE_COLUMNS, read_trace_csv, write_trace_csv
from noisytr.harness.plotting import clip_rho, emit_plot_series
from noisytr.harness.experiment import ExperimentResult, RunSummary, resolve_x0, run_experiment, run_traces
from noisytr.harness.rtable import RTableCell, RTableResult, r_table
from noisytr.harness.presets import list_presets, load_preset, resolve_config
