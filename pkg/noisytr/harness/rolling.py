from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from pydantic import BaseModel, ConfigDict, Field

ROLLING_WINDOW = 25


def rolling_min(series: Sequence[float], window: int = ROLLING_WINDOW) -> np.ndarray:
    """values[k] = min(series[max(0, k - window + 1) : k + 1])."""
    if window < 1:
        raise ValueError(f"window must be positive, got {window}")
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        return x.copy()
    padded = np.concatenate([np.full(window - 1, np.inf), x])
    return sliding_window_view(padded, window).min(axis=1)


class RollingMinSeries(BaseModel):
    """Trailing-window minimum of a gradient-norm series."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    window: int = Field(ROLLING_WINDOW, gt=0)
    source: str = Field("grad_norm_true", description="Trace column the minimum is taken over")
    values: np.ndarray

    @classmethod
    def from_series(cls, series: Sequence[float], window: int = ROLLING_WINDOW, source: str = "grad_norm_true") -> "RollingMinSeries":
        return cls(window=window, source=source, values=rolling_min(series, window))

    @property
    def final(self) -> float:
        return float(self.values[-1]) if self.values.size else float("nan")
