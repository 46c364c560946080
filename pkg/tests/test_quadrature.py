"""Gauss-Laguerre rules and the radial measure."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import roots_genlaguerre

from diracpl.orthopoly import gamma_ratio
from diracpl.quadrature import (RadialMeasure, gauss_laguerre,
                                inner_product_radial, rule_for_envelope)


class TestRuleConstruction:
    def test_order_one(self):
        rule = gauss_laguerre(1, 0.0)
        np.testing.assert_allclose(rule.nodes, [1.0], rtol=1e-14)
        np.testing.assert_allclose(rule.weights, [1.0], rtol=1e-14)

    def test_order_two(self):
        rule = gauss_laguerre(2, 0.0)
        np.testing.assert_allclose(rule.nodes, [2.0 - math.sqrt(2), 2.0 + math.sqrt(2)],
                                   rtol=1e-13)
        np.testing.assert_allclose(rule.weights,
                                   [(2.0 + math.sqrt(2)) / 4.0, (2.0 - math.sqrt(2)) / 4.0],
                                   rtol=1e-13)

    @pytest.mark.parametrize("order", [1, 5, 25, 60])
    @pytest.mark.parametrize("nu", [-0.5, 0.0, 1.0, 2.5, 7.0])
    def test_rule_invariants(self, order, nu):
        rule = gauss_laguerre(order, nu)
        assert np.all(rule.nodes > 0)
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(rule.weights > 0)
        assert np.sum(rule.weights) == pytest.approx(math.gamma(nu + 1.0), rel=1e-12)

    @pytest.mark.parametrize("order,nu", [(6, 0.0), (12, -0.5), (20, 1.5), (40, 3.0)])
    def test_moment_exactness(self, order, nu):
        # integrates x^k exactly against x^nu e^{-x} for k <= 2 order - 1
        rule = gauss_laguerre(order, nu)
        for k in range(2 * order):
            got = rule.integrate(rule.nodes ** k)
            exact = math.exp(math.lgamma(nu + k + 1.0))
            assert got == pytest.approx(exact, rel=1e-12)

    @pytest.mark.parametrize("order,nu", [(10, 0.0), (25, -0.4), (50, 2.3)])
    def test_against_library_rule(self, order, nu):
        nodes, weights = roots_genlaguerre(order, nu)
        rule = gauss_laguerre(order, nu)
        np.testing.assert_allclose(rule.nodes, nodes, rtol=1e-12)
        np.testing.assert_allclose(rule.weights, weights, rtol=1e-10)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            gauss_laguerre(0, 0.0)
        with pytest.raises(ValueError):
            gauss_laguerre(5, -1.0)


class TestLaguerreOrthogonality:
    @pytest.mark.parametrize("nu", [-0.5, 0.0, 2.5])
    def test_weighted_gram_matrix(self, nu):
        from diracpl.orthopoly import laguerre_all
        rule = gauss_laguerre(32, nu)
        table = laguerre_all(20, nu, rule.nodes)
        for n in range(21):
            for m in range(n, 21):
                val = rule.integrate(table[n] * table[m])
                if n == m:
                    expected = gamma_ratio(n + nu + 1.0, n + 1.0)
                    assert val == pytest.approx(expected, rel=1e-10)
                else:
                    diag = gamma_ratio(n + nu + 1.0, n + 1.0)
                    assert abs(val) < 1e-10 * diag


class TestRadialMeasure:
    def test_coordinate_round_trip(self):
        for beta, omega in [(3.0, 1.2), (-2.0, 0.7), (0.5, 2.0)]:
            m = RadialMeasure(beta=beta, omega=omega)
            r = np.geomspace(0.1, 10.0, 7)
            np.testing.assert_allclose(m.r_of_x(m.x_of_r(r)), r, rtol=1e-13)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            RadialMeasure(beta=0.0, omega=1.0)
        with pytest.raises(ValueError):
            RadialMeasure(beta=1.0, omega=-2.0)

    @pytest.mark.parametrize("beta,omega,a_pow", [(3.0, 1.1, 1.4), (-2.0, 0.8, 0.9),
                                                  (2.5, 1.0, 2.0), (-0.5, 1.3, 3.5)])
    def test_substitution_matches_adaptive_quadrature(self, beta, omega, a_pow):
        # same positive integrand via the x-substitution rule and via adaptive
        # integration on the r half-line
        m = RadialMeasure(beta=beta, omega=omega)

        def f(r):
            x = m.x_of_r(r)
            return np.power(x, a_pow) * np.exp(-x)

        def one(r):
            return np.ones_like(np.asarray(r, dtype=float))

        rule = rule_for_envelope(m, a_pow, order=40)
        ours = inner_product_radial(f, one, m, rule, envelope=(a_pow, True))
        ref, err = quad(lambda r: float(f(r)), 0.0, np.inf, limit=400)
        assert ours == pytest.approx(ref, rel=1e-6)


class TestInnerProductRadial:
    def test_zeroth_moment_round_trip(self):
        # constant-envelope case: the transformed integral is Gamma(nu+1)
        m = RadialMeasure(beta=3.0, omega=1.4)
        nu = 1.7
        a_pow = nu + 1.0 - 1.0 / m.beta

        def f(r):
            x = m.x_of_r(r)
            return m.omega * abs(m.beta) * np.power(x, a_pow) * np.exp(-x)

        def one(r):
            return np.ones_like(np.asarray(r, dtype=float))

        rule = gauss_laguerre(24, nu)
        val = inner_product_radial(f, one, m, rule, envelope=(a_pow, True))
        assert val == pytest.approx(math.gamma(nu + 1.0), rel=1e-12)

    def test_matched_exponent_normalization(self):
        # a basis-shaped function x^alpha e^{-x/2} L_n whose exponents match
        # the weight integrates to exactly 1 with the standard normalization
        from diracpl.orthopoly import laguerre_eval, sqrt_gamma_ratio
        beta, omega, nu = 3.0, 1.2, 1.0
        alpha = (nu + 1.0 - 1.0 / beta) / 2.0
        m = RadialMeasure(beta=beta, omega=omega)

        def make(n):
            a_n = math.sqrt(omega * beta) * sqrt_gamma_ratio(n + 1.0, n + nu + 1.0)

            def f(r):
                x = m.x_of_r(r)
                return a_n * np.power(x, alpha) * np.exp(-x / 2.0) \
                    * laguerre_eval(n, nu, x)
            return f

        rule = gauss_laguerre(20, nu)
        env = (2.0 * alpha, True)
        assert inner_product_radial(make(0), make(0), m, rule, env) == pytest.approx(1.0, rel=1e-12)
        assert abs(inner_product_radial(make(0), make(1), m, rule, env)) < 1e-12
        assert inner_product_radial(make(3), make(3), m, rule, env) == pytest.approx(1.0, rel=1e-12)

    def test_requires_exponential_envelope(self):
        m = RadialMeasure(beta=2.5, omega=1.0)
        rule = gauss_laguerre(10, 0.0)
        with pytest.raises(ValueError):
            inner_product_radial(lambda r: r, lambda r: r, m, rule, envelope=(1.0, False))

    def test_non_finite_integrand_rejected(self):
        m = RadialMeasure(beta=2.0 + 1e-9, omega=1.0)  # beta=2 shape, just admissible
        rule = gauss_laguerre(10, 0.0)

        def bad(r):
            return np.where(np.asarray(r) > 0.5, np.inf, 1.0)

        def one(r):
            return np.ones_like(np.asarray(r, dtype=float))

        with pytest.raises(ValueError):
            inner_product_radial(bad, one, m, rule, envelope=(0.0, True))
