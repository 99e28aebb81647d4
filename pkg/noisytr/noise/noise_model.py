from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NoiseFamily(str, Enum):
    UNIFORM = "uniform"        # interval / ball / uniform diagonal
    RADEMACHER = "rademacher"  # signs / sphere / signed diagonal
    NONE = "none"


class HessianNorm(str, Enum):
    SPECTRAL = "spectral"
    FROBENIUS = "frobenius"


class NoiseSpec(BaseModel):
    """Bounds and family of the injected evaluation errors."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    eps_f: float = Field(0.0, ge=0.0, description="Bound on |delta_f|")
    eps_g: float = Field(0.0, ge=0.0, description="Bound on ||delta_g||")
    eps_B: float = Field(0.0, ge=0.0, description="Bound on ||delta_B||_2")
    family: NoiseFamily = Field(NoiseFamily.UNIFORM, description="Noise distribution family")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="64-bit stream key")
    hessian_norm: HessianNorm = Field(HessianNorm.SPECTRAL, description="Normalisation of A in A^T L A / ||A||^2")

    @model_validator(mode="before")
    @classmethod
    def none_family_is_noiseless(cls, data: Any) -> Any:
        if isinstance(data, dict):
            family = data.get("family")
            if isinstance(family, NoiseFamily):
                family = family.value
            if isinstance(family, str) and family.lower() == NoiseFamily.NONE.value:
                data = {**data, "eps_f": 0.0, "eps_g": 0.0, "eps_B": 0.0}
        return data

    @property
    def is_noiseless(self) -> bool:
        return self.eps_f == 0.0 and self.eps_g == 0.0 and self.eps_B == 0.0

    def with_seed(self, seed: int) -> "NoiseSpec":
        return self.model_copy(update={"seed": seed})
