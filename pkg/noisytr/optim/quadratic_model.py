import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from noisytr.errors import NoisyTRError
from noisytr.utils.linalg import spectral_norm, symmetrize


class DimensionMismatchError(NoisyTRError):
    pass


class QuadraticModel(BaseModel):
    """m(p) = f_noisy + g_noisy^T p + 1/2 p^T B p."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    f_noisy: float = Field(..., description="Noisy function value at the iterate")
    g_noisy: np.ndarray = Field(..., description="Noisy gradient at the iterate")
    B: np.ndarray = Field(..., description="Symmetric Hessian approximation")

    @field_validator("g_noisy", mode="before")
    @classmethod
    def as_vector(cls, v) -> np.ndarray:
        v = np.array(v, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("gradient entries must be finite")
        return v

    @field_validator("B", mode="before")
    @classmethod
    def as_symmetric(cls, v) -> np.ndarray:
        v = np.atleast_2d(np.array(v, dtype=float))
        if v.shape[0] != v.shape[1]:
            raise ValueError(f"B must be square, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("B entries must be finite")
        scale = max(1.0, float(np.max(np.abs(v)))) if v.size else 1.0
        if v.size and float(np.max(np.abs(v - v.T))) > 1e-12 * scale:
            raise ValueError("B must be symmetric")
        return symmetrize(v)

    @model_validator(mode="after")
    def check_shapes(self) -> "QuadraticModel":
        if self.B.shape[0] != self.g_noisy.size:
            raise ValueError(f"B is {self.B.shape[0]}x{self.B.shape[0]} but gradient has length {self.g_noisy.size}")
        return self

    @property
    def dimension(self) -> int:
        return self.g_noisy.size

    @property
    def g_norm(self) -> float:
        return float(np.linalg.norm(self.g_noisy))


def _check_step(m: QuadraticModel, p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != m.dimension:
        error_msg = f"step has length {p.size}, model has dimension {m.dimension}"
        logger.error(f"[MODEL] {error_msg}")
        raise DimensionMismatchError(error_msg)
    return p


def evaluate(m: QuadraticModel, p: np.ndarray) -> float:
    p = _check_step(m, p)
    return float(m.f_noisy + m.g_noisy @ p + 0.5 * p @ (m.B @ p))


def predicted_reduction(m: QuadraticModel, p: np.ndarray) -> float:
    """m(0) - m(p), computed without forming either model value."""
    p = _check_step(m, p)
    return float(-(m.g_noisy @ p) - 0.5 * p @ (m.B @ p))


def cauchy_decrease(m: QuadraticModel, delta: float) -> float:
    """Lower bound 1/2 ||g|| min(delta, ||g|| / ||B||); ||B|| = 0 selects delta."""
    g_norm = m.g_norm
    B_norm = spectral_norm(m.B)
    if B_norm == 0.0:
        return 0.5 * g_norm * delta
    return 0.5 * g_norm * min(delta, g_norm / B_norm)
