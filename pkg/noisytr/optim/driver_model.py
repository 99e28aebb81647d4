from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from noisytr.noise.noise_model import NoiseSpec
from noisytr.optim.subproblem import SubproblemSolver


class RatioVariant(str, Enum):
    CLASSICAL = "classical"
    NOISY = "noisy"


class TrustRegionConfig(BaseModel):
    """Parameters of the trust-region iteration; defaults are the usual (0.1, 0.25, 0.5, 2)."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    c0: float = Field(0.1, description="Acceptance threshold")
    c1: float = Field(0.25, description="Shrink threshold")
    c2: float = Field(0.5, description="Expansion threshold")
    nu: float = Field(2.0, description="Radius update factor")
    delta0: float = Field(1.0, gt=0.0, description="Initial trust-region radius")
    eps_f_for_ratio: Optional[float] = Field(
        None, ge=0.0, description="eps_f used in the relaxed ratio; None uses the injected eps_f"
    )
    ratio_variant: RatioVariant = RatioVariant.NOISY
    max_iters: int = Field(200, gt=0)
    solver: SubproblemSolver = SubproblemSolver.NEWTON_CG
    cg_tol: float = Field(1e-8, gt=0.0, description="Relative residual tolerance of newton_cg")
    require_boundary_for_increase: bool = False

    @model_validator(mode="after")
    def check_parameter_ordering(self) -> "TrustRegionConfig":
        if not (0.0 < self.c0 <= self.c1 < self.c2 < 1.0):
            raise ValueError(
                f"constants must satisfy 0 < c0 <= c1 < c2 < 1, got c0={self.c0}, c1={self.c1}, c2={self.c2}"
            )
        if not self.nu > 1.0:
            raise ValueError(f"nu must exceed 1, got {self.nu}")
        return self

    @property
    def r(self) -> float:
        return 2.0 / (1.0 - self.c2)

    def ratio_eps_f(self) -> float:
        """eps_f entering the ratio; zero for the classical variant."""
        if self.ratio_variant == RatioVariant.CLASSICAL:
            return 0.0
        return self.eps_f_for_ratio or 0.0

    def resolved(self, noise: NoiseSpec) -> "TrustRegionConfig":
        if self.eps_f_for_ratio is not None:
            return self
        return self.model_copy(update={"eps_f_for_ratio": noise.eps_f})

    def with_variant(self, variant: RatioVariant) -> "TrustRegionConfig":
        return self.model_copy(update={"ratio_variant": RatioVariant(variant)})


class IterationRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    f_true: float
    f_noisy: float
    grad_norm_true: float
    grad_norm_noisy: float
    delta: float
    rho: float
    accepted: bool
    step_norm: float
    dist_to_solution: Optional[float] = None

    @field_validator("delta")
    @classmethod
    def check_delta(cls, v: float) -> float:
        if not v > 0.0:
            raise ValueError(f"delta must be positive, got {v}")
        return v


class Trace(BaseModel):
    """Full record of one run. iterates/trial_points are kept only on request and never serialised."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    problem: str
    config: TrustRegionConfig
    noise: NoiseSpec
    x0: np.ndarray
    records: List[IterationRecord] = Field(default_factory=list)
    final_x: Optional[np.ndarray] = None
    final_f_noisy: Optional[float] = None
    final_delta: Optional[float] = None
    error: Optional[str] = None
    iterates: Optional[List[np.ndarray]] = Field(None, exclude=True)
    trial_points: Optional[List[np.ndarray]] = Field(None, exclude=True)

    @property
    def completed(self) -> bool:
        return self.error is None and len(self.records) == self.config.max_iters

    @property
    def variant(self) -> RatioVariant:
        return self.config.ratio_variant

    def series(self, name: str) -> np.ndarray:
        """Column of the records as a float array (None becomes nan)."""
        return np.array(
            [np.nan if getattr(rec, name) is None else float(getattr(rec, name)) for rec in self.records],
            dtype=float,
        )
