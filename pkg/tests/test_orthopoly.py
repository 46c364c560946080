"""Polynomial families: recurrence vs series agreement and classical identities."""

import math

import numpy as np
import pytest

from diracpl.orthopoly import (cdh_eval, cdh_series, gamma_ratio, hyp_mp_eval,
                               hyp_mp_series, laguerre_all, laguerre_deriv,
                               laguerre_eval, laguerre_series, mod_cdh_eval,
                               mod_cdh_series, mp_eval, mp_series)

NU_GRID = [-0.5, 0.0, 1.0, 2.5]
RNG = np.random.default_rng(20250809)
X_GRID = np.sort(RNG.uniform(1e-3, 50.0, size=40))


class TestLaguerre:
    def test_degree_zero_is_one(self):
        assert laguerre_eval(0, 2.5, 7.3) == 1.0
        assert laguerre_series(0, -0.3, 11.0) == 1.0

    def test_frozen_values(self):
        # 1 - x at x = 1; 1 - 2x + x^2/2 at x = 2; value at x = 0 is binom(n+nu, n)
        assert laguerre_eval(1, 0.0, 1.0) == pytest.approx(0.0, abs=1e-15)
        assert laguerre_eval(2, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)
        assert laguerre_series(2, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)
        assert laguerre_series(1, 3.0, 0.0) == pytest.approx(4.0, rel=1e-14)

    @pytest.mark.parametrize("nu", NU_GRID)
    @pytest.mark.parametrize("n", [1, 2, 5, 10, 20])
    def test_recurrence_matches_series(self, n, nu):
        # relative to the local polynomial size; near roots only the absolute
        # deviation on that scale is meaningful
        for x in X_GRID:
            a = laguerre_eval(n, nu, x)
            b = laguerre_series(n, nu, x)
            scale = max(abs(laguerre_series(n - 1, nu, x)), abs(b), 1.0)
            assert abs(a - b) < 1e-10 * scale

    @pytest.mark.parametrize("nu", NU_GRID)
    @pytest.mark.parametrize("n", [0, 1, 3, 7, 15, 20])
    def test_three_term_relation(self, n, nu):
        # x L_n = (2n+nu+1) L_n - (n+nu) L_{n-1} - (n+1) L_{n+1}
        vals = laguerre_all(n + 1, nu, X_GRID)
        lnm1 = vals[n - 1] if n >= 1 else np.zeros_like(X_GRID)
        lhs = X_GRID * vals[n]
        rhs = (2 * n + nu + 1) * vals[n] - (n + nu) * lnm1 - (n + 1) * vals[n + 1]
        scale = np.maximum(np.abs(lhs), np.maximum((n + 1) * np.abs(vals[n + 1]), 1.0))
        assert np.max(np.abs(lhs - rhs) / scale) < 1e-10

    @pytest.mark.parametrize("nu", [0.5, 1.0, 2.5])
    @pytest.mark.parametrize("n", [0, 1, 4, 9, 20])
    def test_parameter_lowering(self, n, nu):
        # x L_n^nu = (n+nu) L_n^{nu-1} - (n+1) L_{n+1}^{nu-1},   nu > 0
        low = laguerre_all(n + 1, nu - 1.0, X_GRID)
        lhs = X_GRID * laguerre_all(n, nu, X_GRID)[n]
        rhs = (n + nu) * low[n] - (n + 1) * low[n + 1]
        scale = np.maximum(np.abs(lhs), np.maximum((n + 1) * np.abs(low[n + 1]), 1.0))
        assert np.max(np.abs(lhs - rhs) / scale) < 1e-10

    @pytest.mark.parametrize("nu", NU_GRID)
    @pytest.mark.parametrize("n", [1, 2, 6, 13, 20])
    def test_parameter_raising_difference(self, n, nu):
        # L_n^nu = L_n^{nu+1} - L_{n-1}^{nu+1}
        up = laguerre_all(n, nu + 1.0, X_GRID)
        lhs = laguerre_all(n, nu, X_GRID)[n]
        rhs = up[n] - up[n - 1]
        scale = np.maximum(np.abs(lhs), np.maximum(np.abs(up[n]), 1.0))
        assert np.max(np.abs(lhs - rhs) / scale) < 1e-10

    @pytest.mark.parametrize("nu", NU_GRID)
    @pytest.mark.parametrize("n", [1, 2, 5, 12, 20])
    def test_derivative_relation(self, n, nu):
        # x dL_n/dx = n L_n - (n+nu) L_{n-1}, cross-checked against the
        # series-route derivative dL_n^nu/dx = -L_{n-1}^{nu+1}
        for x in X_GRID[::4]:
            d = laguerre_deriv(n, nu, x)
            oracle = -laguerre_series(n - 1, nu + 1.0, x)
            scale = max(abs(oracle), n * abs(laguerre_series(n, nu, x)) / x, 1.0)
            assert abs(d - oracle) < 1e-10 * scale

    def test_derivative_frozen(self):
        assert laguerre_deriv(0, 1.7, 3.0) == 0.0
        assert laguerre_deriv(1, 0.0, 5.0) == pytest.approx(-1.0, rel=1e-14)
        assert laguerre_deriv(2, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_derivative_at_zero_limit(self):
        for n, nu in [(1, 0.0), (3, 0.5), (8, 2.5)]:
            expected = -gamma_ratio(n + nu + 1.0, nu + 2.0) / gamma_ratio(n, 1.0)
            assert laguerre_deriv(n, nu, 0.0) == pytest.approx(expected, rel=1e-12)
            h = 1e-7
            fd = (laguerre_series(n, nu, h) - laguerre_series(n, nu, 0.0)) / h
            assert laguerre_deriv(n, nu, 0.0) == pytest.approx(fd, rel=1e-5)

    @pytest.mark.parametrize("nu", NU_GRID)
    @pytest.mark.parametrize("n", [1, 3, 8, 14, 20])
    def test_differential_equation(self, n, nu):
        # x L'' + (nu+1-x) L' + n L = 0 with both derivative orders built
        # from the first-derivative relation
        for x in X_GRID[::4]:
            ln = laguerre_eval(n, nu, x)
            d1 = laguerre_deriv(n, nu, x)
            d1m = laguerre_deriv(n - 1, nu, x) if n >= 1 else 0.0
            lnm = laguerre_eval(n - 1, nu, x) if n >= 1 else 0.0
            d2 = (n * d1 - (n + nu) * d1m) / x - (n * ln - (n + nu) * lnm) / x ** 2
            res = x * d2 + (nu + 1.0 - x) * d1 + n * ln
            assert abs(res) < 1e-8 * (abs(ln) + 1.0)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            laguerre_eval(2, -1.0, 1.0)
        with pytest.raises(ValueError):
            laguerre_eval(2, 0.0, -0.5)
        with pytest.raises(ValueError):
            laguerre_eval(-1, 0.0, 1.0)


class TestMeixnerPollaczek:
    def test_frozen_values(self):
        assert mp_eval(0, 1.3, 0.4, 1.0) == 1.0
        assert mp_eval(1, 1.0, 0.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
        assert mp_eval(1, 2.0, 1.0, math.pi / 2) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("lam", [0.6, 1.5, 2.5])
    @pytest.mark.parametrize("theta", [0.8, math.pi / 2, 2.4])
    @pytest.mark.parametrize("y", [-2.0, 0.0, 0.7])
    def test_recurrence_matches_series(self, lam, theta, y):
        for n in range(21):
            a = mp_eval(n, lam, y, theta)
            b = mp_series(n, lam, y, theta)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-10 * (abs(b) + 1.0))

    def test_theta_range_enforced(self):
        with pytest.raises(ValueError):
            mp_eval(3, 1.0, 0.0, -0.2)
        with pytest.raises(ValueError):
            mp_eval(3, 1.0, 0.0, math.pi)
        with pytest.raises(ValueError):
            mp_eval(3, -1.0, 0.0, 1.0)


class TestHyperbolicMeixnerPollaczek:
    def test_theta_zero_reduces_to_gamma_ratio(self):
        # 2F1 argument vanishes at theta = 0, leaving Gamma(n+2lam)/(n! Gamma(2lam))
        for n, lam in [(0, 0.8), (2, 1.0), (5, 1.7), (9, 0.5)]:
            expected = gamma_ratio(n + 2 * lam, 2 * lam) / gamma_ratio(n + 1.0, 1.0)
            assert hyp_mp_eval(n, lam, 0.37, 0.0) == pytest.approx(expected, rel=1e-12)
        assert hyp_mp_eval(2, 1.0, 5.0, 0.0) == pytest.approx(3.0, rel=1e-14)

    def test_first_order_frozen(self):
        theta = math.asinh(4.0 / 3.0)
        assert hyp_mp_eval(1, 1.0, 0.0, theta) == pytest.approx(10.0 / 3.0, rel=1e-14)
        for lam, y, th in [(0.7, -1.2, 0.5), (2.0, 3.0, -1.1)]:
            expected = 2.0 * (lam * math.cosh(th) + y * math.sinh(th))
            assert hyp_mp_eval(1, lam, y, th) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("lam", [0.5, 1.25, 2.0])
    @pytest.mark.parametrize("theta", [-0.7, 0.4, 1.2])
    @pytest.mark.parametrize("y", [-1.0, 0.0, 0.8])
    def test_recurrence_matches_series(self, lam, theta, y):
        for n in range(21):
            a = hyp_mp_eval(n, lam, y, theta)
            b = hyp_mp_series(n, lam, y, theta)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-10 * (abs(b) + 1.0))

    @pytest.mark.parametrize("lam,y,theta", [(0.9, 0.3, 0.8), (1.5, -0.6, -0.4)])
    def test_recurrence_residual(self, lam, y, theta):
        c, s = math.cosh(theta), math.sinh(theta)
        vals = [hyp_mp_eval(n, lam, y, theta) for n in range(22)]
        for n in range(21):
            lead = 2.0 * ((n + lam) * c + y * s) * vals[n]
            res = lead - (n + 2 * lam - 1.0) * (vals[n - 1] if n else 0.0) \
                - (n + 1.0) * vals[n + 1]
            assert abs(res) < 1e-10 * (abs(lead) + 1.0)


class TestContinuousDualHahn:
    def test_frozen_values(self):
        assert cdh_eval(0, 0.9, 1.3, 0.4, 2.0) == 1.0
        # [(lam+a)(lam+b) - lam^2 - y^2] / [(lam+a)(lam+b)] at n = 1
        assert cdh_eval(1, 0.5, 0.0, 0.5, 0.5) == pytest.approx(0.75, rel=1e-14)
        assert cdh_eval(1, 0.5, 1.0, 0.5, 0.5) == pytest.approx(-0.25, rel=1e-14)

    @pytest.mark.parametrize("lam,a,b", [(0.6, 0.8, 1.2), (1.0, 1.0, 1.0), (1.5, 0.7, 2.0)])
    @pytest.mark.parametrize("ysq", [0.0, 0.5, 2.0, 7.0])
    def test_recurrence_matches_series(self, lam, a, b, ysq):
        for n in range(21):
            u = cdh_eval(n, lam, ysq, a, b)
            v = cdh_series(n, lam, ysq, a, b)
            assert u == pytest.approx(v, rel=1e-10, abs=1e-10 * (abs(v) + 1.0))

    def test_rejects_negative_ysq(self):
        with pytest.raises(ValueError):
            cdh_eval(2, 1.0, -0.5, 1.0, 1.0)


class TestModifiedContinuousDualHahn:
    def test_frozen_values(self):
        assert mod_cdh_eval(0, 1.1, 0.3, 0.5, 0.9) == 1.0
        # 1 - (lam^2 - y^2)/((lam+a)(lam+b)) at n = 1
        assert mod_cdh_eval(1, 0.5, 1.0, 0.5, 0.5) == pytest.approx(1.75, rel=1e-14)
        lam, y, a, b = 1.2, 0.7, 0.9, 1.4
        expected = 1.0 - (lam * lam - y * y) / ((lam + a) * (lam + b))
        assert mod_cdh_series(1, lam, y, a, b) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("lam,a,b", [(0.6, 0.8, 1.2), (1.5, 1.5, 0.5), (2.0, 0.3, 1.0)])
    @pytest.mark.parametrize("y", [0.0, 0.5, 1.7, 3.0])
    def test_recurrence_matches_series(self, lam, a, b, y):
        # the recurrence is the sign-flipped squared-argument relation
        for n in range(21):
            u = mod_cdh_eval(n, lam, y, a, b)
            v = mod_cdh_series(n, lam, y, a, b)
            assert u == pytest.approx(v, rel=1e-10, abs=1e-10 * (abs(v) + 1.0))

    def test_matches_cdh_at_zero_argument(self):
        for n in range(12):
            assert mod_cdh_eval(n, 1.1, 0.0, 0.8, 0.6) == pytest.approx(
                cdh_eval(n, 1.1, 0.0, 0.8, 0.6), rel=1e-13)

    def test_rejects_bad_denominators(self):
        with pytest.raises(ValueError):
            mod_cdh_eval(3, 1.0, 0.5, -1.0, 1.0)
