import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError

from noisytr.noise import (
    HessianNorm,
    NoiseFamily,
    NoiseSpec,
    NoiseStream,
    counter_generator,
    draw_function_noise,
    draw_gradient_noise,
    draw_hessian_noise,
)


def _stream(**kwargs) -> NoiseStream:
    return NoiseStream(NoiseSpec(**kwargs))


class TestNoiseSpec:
    def test_defaults(self):
        spec = NoiseSpec()
        assert spec.family == NoiseFamily.UNIFORM
        assert spec.is_noiseless

    def test_none_family_zeroes_bounds(self):
        spec = NoiseSpec(eps_f=1.0, eps_g=2.0, eps_B=3.0, family="none")
        assert (spec.eps_f, spec.eps_g, spec.eps_B) == (0.0, 0.0, 0.0)
        assert spec.is_noiseless

    @pytest.mark.parametrize("field", ["eps_f", "eps_g", "eps_B"])
    def test_negative_bound_rejected(self, field):
        with pytest.raises(ValidationError):
            NoiseSpec(**{field: -1.0})

    def test_seed_range(self):
        NoiseSpec(seed=2 ** 64 - 1)
        with pytest.raises(ValidationError):
            NoiseSpec(seed=2 ** 64)
        with pytest.raises(ValidationError):
            NoiseSpec(seed=-1)

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            NoiseSpec(eps_h=1.0)

    def test_with_seed(self):
        spec = NoiseSpec(eps_f=1.0, seed=3)
        other = spec.with_seed(7)
        assert other.seed == 7 and other.eps_f == 1.0
        assert spec.seed == 3


class TestFunctionNoise:
    def test_zero_bound(self):
        s = _stream(eps_f=0.0)
        assert draw_function_noise(s) == 0.0

    def test_rademacher_values_and_mean(self):
        s = _stream(eps_f=0.1, family="rademacher", seed=11)
        draws = np.array([draw_function_noise(s) for _ in range(10_000)])
        assert set(np.unique(draws)) <= {-0.1, 0.1}
        assert abs(draws.mean()) < 0.01

    def test_uniform_bounded_and_centred(self):
        s = _stream(eps_f=10.0, seed=5)
        draws = np.array([draw_function_noise(s) for _ in range(10_000)])
        assert np.all(np.abs(draws) <= 10.0)
        assert abs(draws.mean()) < 0.3


class TestGradientNoise:
    def test_zero_bound(self):
        assert_array_equal(draw_gradient_noise(_stream(eps_g=0.0), 4), np.zeros(4))

    @pytest.mark.parametrize("n", [1, 3, 50])
    def test_sphere_norm(self, n):
        s = _stream(eps_g=5.0, family="rademacher", seed=2)
        for _ in range(20):
            assert np.linalg.norm(draw_gradient_noise(s, n)) == pytest.approx(5.0, rel=1e-14)

    def test_ball_mean_radius(self):
        s = _stream(eps_g=1.0, seed=9)
        radii = np.array([np.linalg.norm(draw_gradient_noise(s, 2)) for _ in range(100_000)])
        assert radii.max() <= 1.0
        assert abs(radii.mean() - 2.0 / 3.0) < 0.01

    def test_dimension_must_be_positive(self):
        with pytest.raises(ValueError):
            _stream(eps_g=1.0).gradient_noise(0)


class TestHessianNoise:
    def test_zero_bound(self):
        assert_array_equal(draw_hessian_noise(_stream(eps_B=0.0), 3), np.zeros((3, 3)))

    def test_symmetric_and_bounded(self):
        s = _stream(eps_B=1000.0, seed=4)
        for _ in range(100):
            dB = draw_hessian_noise(s, 5)
            assert_array_equal(dB, dB.T)
            assert np.max(np.abs(np.linalg.eigvalsh(dB))) <= 1000.0 * (1.0 + 1e-12)

    def test_scalar_case_is_lambda(self):
        spec = NoiseSpec(eps_B=3.0, seed=17)
        dB = NoiseStream(spec).hessian_noise(1, counter=6)
        rng = counter_generator(17, 6, "B")
        rng.random((1, 1))
        lam = rng.uniform(-3.0, 3.0, size=1)
        assert_allclose(dB, lam.reshape(1, 1), rtol=1e-14)

    def test_frobenius_switch_is_smaller(self):
        base = dict(eps_B=10.0, seed=21)
        spectral = NoiseStream(NoiseSpec(**base)).hessian_noise(6)
        frobenius = NoiseStream(NoiseSpec(**base, hessian_norm=HessianNorm.FROBENIUS)).hessian_noise(6)
        assert np.linalg.norm(frobenius, 2) <= np.linalg.norm(spectral, 2) * (1.0 + 1e-12)
        assert np.linalg.norm(frobenius, 2) <= 10.0


@pytest.mark.parametrize("family", ["uniform", "rademacher"])
@pytest.mark.parametrize("eps", [1e-5, 1.0, 1000.0])
def test_bounds_never_violated(family, eps):
    s = _stream(eps_f=eps, eps_g=eps, eps_B=eps, family=family, seed=123)
    slack = 1.0 + 1e-12
    for k in range(10_000):
        assert abs(s.function_noise(k)) <= eps
        assert np.linalg.norm(s.gradient_noise(4, k)) <= eps * slack
    for k in range(0, 10_000, 10):
        assert np.linalg.norm(s.hessian_noise(4, k), 2) <= eps * slack


class TestNoiseStream:
    def test_equal_seeds_are_bit_identical(self):
        spec = NoiseSpec(eps_f=1.0, eps_g=1.0, eps_B=1.0, seed=99)
        a, b = NoiseStream(spec), NoiseStream(spec)
        for _ in range(50):
            assert draw_function_noise(a) == draw_function_noise(b)
            assert_array_equal(draw_gradient_noise(a, 3), draw_gradient_noise(b, 3))
            assert_array_equal(draw_hessian_noise(a, 3), draw_hessian_noise(b, 3))

    def test_replay_reproduces(self):
        s = _stream(eps_f=1.0, seed=8)
        first = [draw_function_noise(s) for _ in range(10)]
        replayed = s.replay()
        assert replayed.counter == 0
        assert [draw_function_noise(replayed) for _ in range(10)] == first

    def test_different_seeds_differ(self):
        a = _stream(eps_f=1.0, seed=1)
        b = _stream(eps_f=1.0, seed=2)
        assert [a.function_noise(k) for k in range(5)] != [b.function_noise(k) for k in range(5)]

    def test_draw_at_counter_does_not_advance(self):
        s = _stream(eps_f=1.0, eps_g=1.0, seed=3)
        value = s.function_noise()
        assert s.function_noise() == value
        assert s.counter == 0
        s.gradient_noise(5, counter=12)
        assert s.counter == 0

    def test_draws_advance_counter(self):
        s = _stream(eps_f=1.0, eps_g=1.0, eps_B=1.0, seed=3)
        draw_function_noise(s)
        draw_gradient_noise(s, 2)
        draw_hessian_noise(s, 2)
        assert s.counter == 3

    def test_counter_is_monotone(self):
        s = _stream(eps_f=1.0)
        with pytest.raises(ValueError):
            s.advance(-1)

    def test_kinds_are_independent(self):
        s = _stream(eps_f=1.0, eps_g=1.0, seed=5)
        rng_f = counter_generator(5, 0, "f")
        rng_g = counter_generator(5, 0, "g")
        assert rng_f.random() != rng_g.random()

    def test_counter_draw_matches_sequence(self):
        s = _stream(eps_g=2.0, seed=14)
        sequence = [draw_gradient_noise(s, 3) for _ in range(6)]
        direct = NoiseStream(s.spec)
        assert_array_equal(direct.gradient_noise(3, counter=4), sequence[4])

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            counter_generator(0, 0, "h")

    def test_repr(self):
        assert repr(_stream(seed=4)) == "NoiseStream(seed=4, family=uniform, counter=0)"
