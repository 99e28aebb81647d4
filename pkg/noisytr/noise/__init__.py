from noisytr.noise.noise_model import NoiseFamily, NoiseSpec, HessianNorm
from noisytr.noise.noise_stream import (
    NoiseStream,
    counter_generator,
    draw_function_noise,
    draw_gradient_noise,
    draw_hessian_noise,
)

__all__ = [
    "NoiseFamily",
    "NoiseSpec",
    "HessianNorm",
    "NoiseStream",
    "counter_generator",
    "draw_function_noise",
    "draw_gradient_noise",
    "draw_hessian_noise",
]
