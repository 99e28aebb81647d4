try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from noisytr.errors import ConfigError, NoisyTRError
from noisytr.noise.noise_model import NoiseSpec
from noisytr.optim.driver_model import RatioVariant, TrustRegionConfig


class ExperimentIOError(NoisyTRError):
    pass


class X0Policy(str, Enum):
    DEFAULT = "default"    # collection start point, else the box
    EXPLICIT = "explicit"
    BOX = "box"            # uniform in [-half_width, half_width]^n, keyed by the seed


class ProblemSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str = Field("quadratic8", description="Problem id, e.g. quadratic8, tridiag:200, s271")
    x0: X0Policy = X0Policy.DEFAULT
    x0_values: Optional[List[float]] = Field(None, description="Start point for the explicit policy")
    x0_half_width: float = Field(50.0, gt=0.0, description="Half width of the box policy")

    @model_validator(mode="after")
    def explicit_needs_values(self) -> "ProblemSection":
        if self.x0 == X0Policy.EXPLICIT and not self.x0_values:
            raise ValueError("x0 = 'explicit' requires x0_values")
        return self


class ExperimentSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    seeds: List[int] = Field(default_factory=lambda: list(range(1, 11)))
    variants: List[RatioVariant] = Field(default_factory=lambda: [RatioVariant.CLASSICAL, RatioVariant.NOISY])
    output_dir: Optional[str] = Field(None, description="Defaults to settings.OUTPUT_DIR/<name>")
    plots: bool = True

    @field_validator("seeds")
    @classmethod
    def check_seeds(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("at least one seed is required")
        bad = [s for s in v if not 0 <= s < 2 ** 64]
        if bad:
            raise ValueError(f"seeds must be 64-bit unsigned integers, got {bad}")
        return v

    @field_validator("variants")
    @classmethod
    def check_variants(cls, v: List[RatioVariant]) -> List[RatioVariant]:
        if not v:
            raise ValueError("at least one ratio variant is required")
        # fixed order keeps output listings stable
        return sorted(set(v), key=lambda variant: variant.value)


class RTableSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    eps_f_grid: List[float] = Field(default_factory=lambda: [1e-2, 1e-1, 1.0, 1e1, 1e2])
    eps_g_grid: List[float] = Field(default_factory=lambda: [1e-2, 1e-1, 1.0, 1e1, 1e2])

    @field_validator("eps_f_grid", "eps_g_grid")
    @classmethod
    def check_grid(cls, v: List[float], info) -> List[float]:
        if not v:
            raise ValueError(f"The '{info.field_name}' grid cannot be empty.")
        if any(not g > 0.0 for g in v):
            raise ValueError(f"The '{info.field_name}' grid values must be positive.")
        return v


class ExperimentConfig(BaseModel):
    """One experiment: a problem, noise levels, trust-region parameters and seeds."""
    model_config = ConfigDict(extra="forbid")

    problem: ProblemSection = Field(default_factory=ProblemSection)
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    trust_region: TrustRegionConfig = Field(default_factory=TrustRegionConfig)
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    rtable: RTableSection = Field(default_factory=RTableSection)

    def variant_config(self, variant: RatioVariant) -> TrustRegionConfig:
        """Paired runs share every trust-region parameter except the ratio variant."""
        return self.trust_region.with_variant(variant)

    def noise_for_seed(self, seed: int) -> NoiseSpec:
        return self.noise.with_seed(seed)


def _field_path(error: Dict[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ())) or "config"


def validate_config(data: Dict[str, Any]) -> ExperimentConfig:
    """
    Validate a parsed config mapping.

    Raises:
        ConfigError: first validation failure, with its dotted field path
    """
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = _field_path(first)
        message = first.get("msg", "invalid value")
        logger.error(f"[HARNESS] Validation error: {field}: {message}")
        raise ConfigError(message, field=field) from e


def load_config_text(text: str, source: str = "<string>") -> ExperimentConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        error_msg = f"cannot parse {source}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ConfigError(error_msg) from e
    return validate_config(data)


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        error_msg = f"cannot read config {path}: {e}"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg) from e
    return load_config_text(text, source=str(path))
