import math

import numpy as np
import pytest

from noisytr.errors import ConfigError
from noisytr.noise import NoiseSpec
from noisytr.optim import IterationRecord, Trace, TrustRegionConfig, run
from noisytr.problems import UnsupportedProblemError, quadratic_problem, schittkowski_problem
from noisytr.problems.test_functions import DiagonalQuadratic
from noisytr.theory import (
    DiagnosticError,
    accepted_increase_bound,
    accepted_increase_violations,
    compute_constants,
    contained,
    critical_region_radius,
    curvature_bound,
    estimate_M,
    estimate_lipschitz,
    level_set_bound,
    min_true_gradient,
    monotone_violations,
    noisy_reduction_floor,
    r_diagnostic,
    radius_increase_triggers,
    radius_increase_violations,
    rho_distance_bound,
    trajectory_constants,
)

GOLDEN = dict(eps_f=0.1, eps_g=0.01, c0=0.1, c2=0.5, nu=2.0, M=1.0)


def _constants(**overrides):
    params = {**GOLDEN, **overrides}
    return compute_constants(**params)


def _record(k, f_noisy, accepted, rho=0.5, delta=1.0, grad_noisy=1.0, grad_true=1.0):
    return IterationRecord(
        k=k,
        f_true=f_noisy,
        f_noisy=f_noisy,
        grad_norm_true=grad_true,
        grad_norm_noisy=grad_noisy,
        delta=delta,
        rho=rho,
        accepted=accepted,
        step_norm=0.0,
    )


def _trace(records, final_f_noisy=0.0):
    return Trace(
        problem="synthetic",
        config=TrustRegionConfig(eps_f_for_ratio=0.1, max_iters=max(1, len(records))),
        noise=NoiseSpec(eps_f=0.1, eps_g=0.01),
        x0=np.zeros(2),
        records=records,
        final_f_noisy=final_f_noisy,
    )


class TestComputeConstants:
    def test_noiseless_collapse(self):
        tc = _constants(eps_f=0.0, eps_g=0.0)
        assert (tc.beta, tc.eta, tc.gamma, tc.mu, tc.c1_radius) == (0.0, 0.0, 0.0, 0.0, 0.0)
        assert critical_region_radius(tc, 0.0) == 0.0

    def test_r(self):
        assert _constants().r == 4.0

    def test_beta_without_gradient_noise(self):
        tc = _constants(eps_g=0.0)
        assert tc.beta == pytest.approx(math.sqrt(230.4), rel=1e-14)
        assert tc.beta == pytest.approx(15.179, abs=1e-3)
        assert tc.eta == pytest.approx(tc.beta / 2.0, rel=1e-14)

    def test_golden_values(self):
        tc = _constants(L=1.0)
        assert tc.beta == pytest.approx(15.178986, rel=1e-5)
        assert tc.eta == pytest.approx(7.569493, rel=1e-5)
        assert tc.gamma == pytest.approx(7.574493, rel=1e-5)
        assert tc.gamma == tc.eta + tc.mu
        assert tc.delta_bar == tc.gamma / (tc.r * tc.M)
        assert tc.G == pytest.approx(115.1246, rel=1e-5)

    def test_beta_identity(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            c0 = rng.uniform(0.01, 0.3)
            params = dict(
                eps_f=10.0 ** rng.uniform(-3.0, 1.0),
                eps_g=10.0 ** rng.uniform(-3.0, -1.0),
                c0=c0,
                c2=rng.uniform(c0, 0.9),
                nu=rng.uniform(1.1, 4.0),
                M=10.0 ** rng.uniform(-1.0, 1.0),
            )
            tc = compute_constants(**params)
            lhs = tc.beta ** 2 - (tc.r * params["eps_g"]) ** 2
            rhs = 8.0 * params["nu"] * tc.r ** 2 * (1.0 / params["c0"] - 1.0) * params["M"] * params["eps_f"]
            assert lhs == pytest.approx(rhs, rel=1e-12)
            assert tc.beta >= tc.r * params["eps_g"]

    @pytest.mark.parametrize(
        "field, low, high",
        [("eps_f", 0.01, 1.0), ("eps_g", 0.001, 0.1), ("M", 0.5, 5.0), ("nu", 1.5, 3.0), ("c0", 0.2, 0.05)],
    )
    def test_radius_monotone(self, field, low, high):
        assert _constants(**{field: low}).c1_radius <= _constants(**{field: high}).c1_radius

    def test_radius_scales_with_sqrt_eps_f(self):
        base = critical_region_radius(_constants(eps_g=0.0, eps_f=0.01), 0.0)
        scaled = critical_region_radius(_constants(eps_g=0.0, eps_f=1.0), 0.0)
        assert scaled == pytest.approx(10.0 * base, rel=1e-12)

    def test_radius_linear_in_eps_g(self):
        for eps_g in (0.001, 0.1, 10.0):
            tc = _constants(eps_f=0.0, eps_g=eps_g)
            assert critical_region_radius(tc, eps_g) == pytest.approx((5.0 + 2.0) * eps_g, rel=1e-12)

    def test_radius_matches_field(self):
        tc = _constants()
        assert critical_region_radius(tc, 0.01) == tc.c1_radius

    @pytest.mark.parametrize(
        "overrides, field",
        [
            ({"c0": 0.6}, "c0/c2"),
            ({"c2": 1.0}, "c0/c2"),
            ({"nu": 1.0}, "nu"),
            ({"M": 0.0}, "M"),
            ({"M": math.inf}, "M"),
            ({"eps_f": -1.0}, "eps"),
        ],
    )
    def test_invalid(self, overrides, field):
        with pytest.raises(ConfigError) as exc_info:
            _constants(**overrides)
        assert exc_info.value.field == field


class TestBounds:
    def test_level_set_golden(self):
        tc = _constants()
        assert level_set_bound(tc, 1.0, 0.1, 0.01, 0.1, 2.0) == pytest.approx(115.3246, rel=1e-4)

    def test_level_set_noiseless(self):
        tc = _constants(eps_f=0.0, eps_g=0.0)
        assert level_set_bound(tc, 1.0, 0.0, 0.0, 0.1, 2.0) == 0.0

    def test_level_set_positive_with_function_noise(self):
        for eps_f in (1e-6, 1e-2, 10.0):
            tc = _constants(eps_f=eps_f, eps_g=0.0, L=1.0)
            assert tc.G > 0.0
            assert level_set_bound(tc, 1.0, eps_f, 0.0, 0.1, 2.0) > 2.0 * eps_f

    def test_accepted_increase_bound(self):
        assert accepted_increase_bound(4.0, 0.1, 0.1) == pytest.approx(0.36)

    def test_noisy_reduction_floor(self):
        tc = _constants()
        expected = 0.1 * (tc.mu * tc.beta + tc.mu ** 2) / (2.0 * 2.0 * 4.0 * 1.0)
        assert noisy_reduction_floor(tc) == pytest.approx(expected, rel=1e-14)
        assert noisy_reduction_floor(_constants(eps_g=0.0)) == 0.0

    def test_rho_distance_bound(self):
        assert rho_distance_bound(1.0, 1.0, 2.0, 1.0, 0.1, 0.01, 4.0) == pytest.approx(1.21 / 1.4)
        assert rho_distance_bound(1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 4.0) == math.inf

    def test_rho_distance_bound_holds_on_quadratic(self):
        obj = quadratic_problem()
        noise = NoiseSpec(eps_f=0.1, eps_g=1e-5, seed=3)
        cfg = TrustRegionConfig(max_iters=100)
        x0 = np.zeros(8)
        x0[0] = 1000.0
        trace = run(obj, noise, cfg, x0)
        B_norm = 2.0 * float(obj.diag.max())
        for rec in trace.records:
            bound = rho_distance_bound(B_norm, rec.delta, rec.grad_norm_noisy, B_norm, 0.1, 1e-5, cfg.r)
            assert abs(rec.rho - 1.0) <= bound * (1.0 + 1e-9) + 1e-12


class TestCurvatureEstimates:
    def test_quadratic(self, quadratic8):
        assert estimate_M(quadratic8) == pytest.approx(2.0 * 10.0 ** -3.25, rel=1e-7)
        assert estimate_M(quadratic8) == pytest.approx(1.1247e-3, rel=1e-4)

    def test_identity_hessian(self):
        assert estimate_M(DiagonalQuadratic(np.full(4, 0.5))) == pytest.approx(1.0, rel=1e-12)

    def test_tridiagonal_matches_dense(self, tridiag200):
        dense = np.linalg.norm(tridiag200.hessian(tridiag200.known_minimizer), 2)
        assert estimate_M(tridiag200) == pytest.approx(dense, rel=1e-6)

    def test_curvature_bound(self, tridiag200):
        assert curvature_bound(tridiag200, 1000.0) == pytest.approx(501.0, rel=1e-6)

    def test_no_minimizer(self, anon_sphere):
        with pytest.raises(UnsupportedProblemError):
            estimate_M(anon_sphere)

    def test_vanishing_hessian(self):
        with pytest.raises(DiagnosticError):
            estimate_M(schittkowski_problem(293))

    def test_lipschitz(self, quadratic8, rng):
        points = [rng.normal(size=8) for _ in range(5)]
        assert estimate_lipschitz(quadratic8, points) == pytest.approx(2.0 * quadratic8.diag.max(), rel=1e-12)
        with pytest.raises(DiagnosticError):
            estimate_lipschitz(quadratic8, [])


class TestRDiagnostic:
    def test_unit_ratio(self):
        assert r_diagnostic(50.0, [5.0] * 10) == pytest.approx(0.0, abs=1e-15)

    def test_sum_of_minima(self):
        assert r_diagnostic(100.0, [1.0] * 10) == pytest.approx(1.0)

    def test_doubling(self):
        minima = [0.1 * (i + 1) for i in range(10)]
        base = r_diagnostic(3.0, minima)
        doubled = r_diagnostic(3.0, [2.0 * v for v in minima])
        assert base - doubled == pytest.approx(math.log10(2.0), rel=1e-12)

    @pytest.mark.parametrize(
        "bound, minima",
        [(1.0, [1.0] * 9), (1.0, [1.0] * 9 + [0.0]), (0.0, [1.0] * 10), (1.0, [1.0] * 9 + [math.nan])],
    )
    def test_undefined(self, bound, minima):
        with pytest.raises(DiagnosticError):
            r_diagnostic(bound, minima)


class TestTraceDiagnostics:
    def test_accepted_increase(self):
        records = [_record(0, 1.0, True), _record(1, 1.3, True), _record(2, 1.7, False)]
        assert accepted_increase_violations(_trace(records, final_f_noisy=1.7)) == [1]

    def test_rejected_steps_ignored(self):
        records = [_record(0, 1.0, False), _record(1, 1.0, True)]
        assert accepted_increase_violations(_trace(records, final_f_noisy=0.9)) == []

    def test_monotone(self):
        records = [_record(0, 1.0, True), _record(1, 0.5, True), _record(2, 0.6, False)]
        assert monotone_violations(_trace(records, final_f_noisy=0.6)) == [1]

    def test_radius_increase(self):
        tc = _constants()
        records = [
            _record(0, 1.0, True, rho=0.3, delta=1.0, grad_noisy=10.0),
            _record(1, 1.0, True, rho=0.6, delta=1.0, grad_noisy=10.0),
            _record(2, 1.0, True, rho=0.3, delta=5.0, grad_noisy=10.0),
            _record(3, 1.0, True, rho=0.3, delta=1.0, grad_noisy=1.0),
        ]
        trace = _trace(records)
        assert radius_increase_violations(trace, tc) == [0]
        assert radius_increase_triggers(trace, tc) == 2

    def test_containment(self):
        records = [_record(k, 1.0, True, grad_true=g) for k, g in enumerate([5.0, 0.2, 3.0])]
        trace = _trace(records)
        assert min_true_gradient(trace) == 0.2
        assert contained(trace, 0.5)
        assert not contained(trace, 0.1)
        assert not contained(_trace([]), 1.0)

    def test_trajectory_constants(self, quadratic8, noiseless):
        x0 = np.zeros(8)
        x0[0] = 10.0
        trace = run(quadratic8, noiseless, TrustRegionConfig(max_iters=5), x0, keep_iterates=True)
        tc = trajectory_constants(quadratic8, trace)
        L = 2.0 * quadratic8.diag.max()
        assert tc.L == pytest.approx(L, rel=1e-12)
        assert tc.L_B == tc.L
        assert tc.M == pytest.approx(L, rel=1e-12)

    def test_trajectory_constants_need_iterates(self, quadratic8, noiseless):
        trace = run(quadratic8, noiseless, TrustRegionConfig(max_iters=2), np.ones(8))
        with pytest.raises(DiagnosticError):
            trajectory_constants(quadratic8, trace)
