"""Discrete reference methods: Grünwald–Letnikov, Riemann–Liouville quadrature, finite differences."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdiff import kernels, oracles
from fracdiff.errors import DomainError, ResolutionError
from fracdiff.oracles import OracleConfig

SIGNALS = {
    "step": lambda t: np.ones_like(np.asarray(t, dtype=float)),
    "ramp": lambda t: np.asarray(t, dtype=float),
    "exp": lambda t: np.exp(1j * np.asarray(t)),
}


class TestWeights:
    def test_integer_order_is_binomial_difference(self):
        assert np.array_equal(oracles.gl_weights(2, 5), [1, -2, 1, 0, 0])

    @pytest.mark.parametrize("lam", [0.5, -0.5, 1.3, -2.7])
    def test_recurrence(self, lam):
        w = oracles.gl_weights(lam, 50)
        expected = [1.0]
        for k in range(1, 50):
            expected.append(expected[-1] * (1 - (lam + 1) / k))
        assert np.allclose(w, expected, rtol=1e-12, atol=0)

    def test_large_count_stays_finite(self):
        w = oracles.gl_weights(0.5, 200_000)
        assert np.all(np.isfinite(w))
        # sum of weights of order lam tends to 0 for lam > 0
        assert abs(w.sum()) < 1e-2


class TestGrunwaldLetnikov:
    def test_step_half_derivative(self):
        gl = oracles.grunwald_letnikov(SIGNALS["step"], 0.5, 1.0, OracleConfig(h=1e-4))
        assert abs(gl - 0.564190) < 1e-3

    def test_derivative_of_constant(self):
        assert abs(oracles.grunwald_letnikov(SIGNALS["step"], 1, 1.0)) < 1e-12

    def test_integral_of_ramp(self):
        assert abs(oracles.grunwald_letnikov(SIGNALS["ramp"], -1, 2.0) - 2) < 1e-3

    def test_too_coarse(self):
        with pytest.raises(ResolutionError):
            oracles.grunwald_letnikov(SIGNALS["step"], 0.5, 1.0, OracleConfig(h=0.2))

    def test_reach(self):
        with pytest.raises(DomainError):
            oracles.grunwald_letnikov(SIGNALS["step"], 0.5, 5.0, OracleConfig(h=1e-3, n_terms=100))

    def test_scalar_callable(self):
        gl = oracles.grunwald_letnikov(lambda t: 1.0, 0.5, 1.0, OracleConfig(h=1e-3))
        assert abs(gl - kernels.differint_step(0.5, 1.0)) < 1e-2

    @pytest.mark.parametrize("lam, f, exact", [
        (0.5, SIGNALS["step"], lambda x: kernels.differint_step(0.5, x)),
        (-0.5, SIGNALS["ramp"], lambda x: kernels.differint_power(-0.5, 1, x)),
        (0.5, SIGNALS["exp"], lambda x: kernels.differint_exp(0.5, 1, x)),
    ])
    def test_halving_h_does_not_increase_error(self, lam, f, exact):
        x = 1.5
        previous = math.inf
        for h in (4e-3, 2e-3, 1e-3, 5e-4):
            err = abs(oracles.grunwald_letnikov(f, lam, x, OracleConfig(h=h)) - exact(x))
            assert err <= max(previous, 1e-9)
            previous = err

    def test_grid_version_matches_pointwise(self):
        h, n = 1e-3, 2001
        t = h * np.arange(n)
        grid = oracles.grunwald_letnikov_grid(np.exp(1j * t), 0.5, h)
        for i in (500, 1000, 2000):
            point = oracles.grunwald_letnikov(SIGNALS["exp"], 0.5, t[i], OracleConfig(h=h))
            assert abs(grid[i] - point) < 1e-10

    @pytest.mark.parametrize("alpha, beta", [(0.25, 0.25), (0.25, 0.5), (0.5, 0.5)])
    def test_grid_composition(self, alpha, beta):
        h = 1e-3
        t = h * np.arange(3001)
        mu = 1.0
        samples = t**mu / math.gamma(mu + 1)
        twice = oracles.grunwald_letnikov_grid(oracles.grunwald_letnikov_grid(samples, alpha, h), beta, h)
        for i in (500, 1500, 3000):
            exact = kernels.differint_power(alpha + beta, mu, t[i])
            assert abs(twice[i] - exact) / abs(exact) < 1e-2


class TestRiemannLiouville:
    def test_integral_of_step(self):
        assert oracles.riemann_liouville_integral(SIGNALS["step"], 1, 3.0) == pytest.approx(3)

    def test_half_integral_of_step(self):
        val = oracles.riemann_liouville_integral(SIGNALS["step"], 0.5, 1.0)
        assert val == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)
        assert val == pytest.approx(kernels.differint_step(-0.5, 1.0), rel=1e-10)

    def test_integral_of_exponential(self):
        val = oracles.riemann_liouville_integral(lambda t: cmath.exp(1j * t), 1, math.pi)
        assert abs(val - 2j) < 1e-10

    def test_order_must_be_positive(self):
        with pytest.raises(DomainError):
            oracles.riemann_liouville_integral(SIGNALS["step"], 0, 1.0)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.1, 2.5), st.floats(0.2, 4.0))
    def test_matches_closed_form_on_exponential(self, alpha, x):
        val = oracles.riemann_liouville_integral(lambda t: cmath.exp(1j * t), alpha, x)
        assert abs(val - kernels.differint_exp(-alpha, 1, x)) < 1e-9


class TestConcordance:
    @pytest.mark.parametrize("name", list(SIGNALS))
    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    @pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
    def test_gl_vs_rl(self, name, alpha, x):
        f = SIGNALS[name]
        gl = oracles.grunwald_letnikov(f, -alpha, x, OracleConfig(h=1e-4))
        rl = oracles.riemann_liouville_integral(lambda t: complex(np.asarray(f(t)).item()), alpha, x)
        assert abs(gl - rl) / abs(rl) < 1e-3


class TestFiniteDifference:
    def test_square(self):
        assert abs(oracles.finite_difference(lambda t: t * t, 1.0, 1e-5) - 2) < 1e-9

    def test_exponential(self):
        fd = oracles.finite_difference(lambda t: cmath.exp(2j * t), 1.0, 1e-5)
        assert abs(fd - 2j * cmath.exp(2j)) < 1e-8

    def test_composition_with_closed_form(self):
        # d/dx of the order-(-0.5) result equals the order-0.5 result
        fd = oracles.finite_difference(lambda t: kernels.differint_step(-0.5, t), 1.3, 1e-4)
        assert abs(fd - kernels.differint_step(0.5, 1.3)) < 1e-5
