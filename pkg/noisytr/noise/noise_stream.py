"""
Counter-keyed noise streams.

Every draw is a pure function of (seed, counter, kind): a fresh Philox
generator is keyed by the seed and started at a counter whose high words hold
the kind and the evaluation index. The low word is left free for the
generator's own increments, so distinct (counter, kind) pairs never overlap.
"""
from typing import Optional

import numpy as np

from noisytr.noise.noise_model import HessianNorm, NoiseFamily, NoiseSpec
from noisytr.utils.linalg import symmetrize

_KIND_IDS = {"f": 1, "g": 2, "B": 3, "x0": 4}


def counter_generator(seed: int, counter: int, kind: str) -> np.random.Generator:
    if kind not in _KIND_IDS:
        raise ValueError(f"unknown noise kind '{kind}'")
    if counter < 0:
        raise ValueError(f"counter must be nonnegative, got {counter}")
    bit_generator = np.random.Philox(key=int(seed), counter=[0, 0, _KIND_IDS[kind], int(counter)])
    return np.random.Generator(bit_generator)


def sample_function_noise(spec: NoiseSpec, counter: int) -> float:
    if spec.family == NoiseFamily.NONE or spec.eps_f == 0.0:
        return 0.0
    rng = counter_generator(spec.seed, counter, "f")
    if spec.family == NoiseFamily.RADEMACHER:
        return spec.eps_f if rng.random() < 0.5 else -spec.eps_f
    return float(rng.uniform(-spec.eps_f, spec.eps_f))


def sample_gradient_noise(spec: NoiseSpec, counter: int, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if spec.family == NoiseFamily.NONE or spec.eps_g == 0.0:
        return np.zeros(n)
    rng = counter_generator(spec.seed, counter, "g")
    z = rng.standard_normal(n)
    while not np.any(z):
        z = rng.standard_normal(n)
    direction = z / np.linalg.norm(z)
    if spec.family == NoiseFamily.RADEMACHER:
        return spec.eps_g * direction
    radius = spec.eps_g * rng.random() ** (1.0 / n)
    return radius * direction


def sample_hessian_noise(spec: NoiseSpec, counter: int, n: int) -> np.ndarray:
    """delta_B = A^T diag(lam) A / ||A||^2 with A_ij ~ U(0, 1)."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if spec.family == NoiseFamily.NONE or spec.eps_B == 0.0:
        return np.zeros((n, n))
    rng = counter_generator(spec.seed, counter, "B")
    A = rng.random((n, n))
    if spec.family == NoiseFamily.RADEMACHER:
        lam = spec.eps_B * np.where(rng.random(n) < 0.5, -1.0, 1.0)
    else:
        lam = rng.uniform(-spec.eps_B, spec.eps_B, size=n)
    if spec.hessian_norm == HessianNorm.FROBENIUS:
        scale = np.linalg.norm(A, "fro") ** 2
    else:
        scale = np.linalg.norm(A, 2) ** 2
    return symmetrize((A.T * lam) @ A) / scale


class NoiseStream:
    """
    Noise source for one run.

    The counter is the evaluation index. Draws at the current counter (or an
    explicit one) do not move it; only advance() does.
    """

    def __init__(self, spec: NoiseSpec, counter: int = 0):
        self.spec = spec
        self.counter = int(counter)

    def function_noise(self, counter: Optional[int] = None) -> float:
        return sample_function_noise(self.spec, self.counter if counter is None else counter)

    def gradient_noise(self, n: int, counter: Optional[int] = None) -> np.ndarray:
        return sample_gradient_noise(self.spec, self.counter if counter is None else counter, n)

    def hessian_noise(self, n: int, counter: Optional[int] = None) -> np.ndarray:
        return sample_hessian_noise(self.spec, self.counter if counter is None else counter, n)

    def advance(self, steps: int = 1) -> int:
        if steps < 0:
            raise ValueError("counter is monotone")
        self.counter += steps
        return self.counter

    def replay(self) -> "NoiseStream":
        return NoiseStream(self.spec, 0)

    def __repr__(self) -> str:
        return f"NoiseStream(seed={self.spec.seed}, family={self.spec.family.value}, counter={self.counter})"


def draw_function_noise(s: NoiseStream) -> float:
    value = s.function_noise()
    s.advance()
    return value


def draw_gradient_noise(s: NoiseStream, n: int) -> np.ndarray:
    value = s.gradient_noise(n)
    s.advance()
    return value


def draw_hessian_noise(s: NoiseStream, n: int) -> np.ndarray:
    value = s.hessian_noise(n)
    s.advance()
    return value
