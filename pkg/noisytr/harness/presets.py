from importlib import resources
from pathlib import Path
from typing import List

from loguru import logger

from noisytr.harness.experiment_model import ExperimentConfig, ExperimentIOError, load_config, load_config_text


def _preset_dir():
    return resources.files("noisytr.harness").joinpath("presets")


def list_presets() -> List[str]:
    return sorted(p.name[: -len(".toml")] for p in _preset_dir().iterdir() if p.name.endswith(".toml"))


def load_preset(name: str) -> ExperimentConfig:
    resource = _preset_dir().joinpath(f"{name}.toml")
    if not resource.is_file():
        error_msg = f"Unknown preset '{name}' (available: {', '.join(list_presets())})"
        logger.error(f"[HARNESS] {error_msg}")
        raise ExperimentIOError(error_msg)
    return load_config_text(resource.read_text(encoding="utf-8"), source=f"preset {name}")


def resolve_config(ref: str) -> ExperimentConfig:
    """A config file path, or the name of a shipped preset."""
    if Path(ref).is_file():
        return load_config(ref)
    if ref in list_presets():
        return load_preset(ref)
    error_msg = f"'{ref}' is neither a config file nor a preset"
    logger.error(f"[HARNESS] {error_msg}")
    raise ExperimentIOError(error_msg)
