from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from noisytr.errors import NoisyTRError


class InvalidDimensionError(NoisyTRError):
    pass


class UnsupportedProblemError(NoisyTRError, NotImplementedError):
    pass


def _frozen(x: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if x is None:
        return None
    arr = np.array(x, dtype=float)
    arr.setflags(write=False)
    return arr


class Objective(ABC):
    """
    Smooth deterministic objective with exact derivatives.

    Subclasses provide value/gradient/hessian. Hessians are dense and exactly
    symmetric. Instances are immutable once constructed.
    """

    def __init__(
        self,
        name: str,
        dimension: int,
        known_minimizer: Optional[np.ndarray] = None,
        known_min_value: Optional[float] = None,
        default_start: Optional[np.ndarray] = None,
    ):
        if dimension < 1:
            raise InvalidDimensionError(f"dimension must be positive, got {dimension}")
        self._name = name
        self._dimension = int(dimension)
        self._known_minimizer = _frozen(known_minimizer)
        self._known_min_value = None if known_min_value is None else float(known_min_value)
        self._default_start = _frozen(default_start)

    @property
    def name(self) -> str:
        return self._name

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def known_minimizer(self) -> Optional[np.ndarray]:
        return self._known_minimizer

    @property
    def known_min_value(self) -> Optional[float]:
        return self._known_min_value

    @property
    def default_start(self) -> Optional[np.ndarray]:
        return None if self._default_start is None else self._default_start.copy()

    @abstractmethod
    def value(self, x: np.ndarray) -> float:
        ...

    @abstractmethod
    def gradient(self, x: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def hessian(self, x: np.ndarray) -> np.ndarray:
        ...

    def distance_to_solution(self, x: np.ndarray) -> Optional[float]:
        if self._known_minimizer is None:
            return None
        return float(np.linalg.norm(np.asarray(x, dtype=float) - self._known_minimizer))

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self._name,
            "dimension": self._dimension,
            "known_min_value": self._known_min_value,
            "has_known_minimizer": self._known_minimizer is not None,
            "has_default_start": self._default_start is not None,
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name='{self._name}', dimension={self._dimension})"
