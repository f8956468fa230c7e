import math

import mpmath as mp
import pytest

from gjquad.core import DEFAULT_CONFIG, PrecisionConfig, make_params
from gjquad.errors import DomainError, NoConvergence, StepOutOfRadius
from gjquad.taylor import (TaylorSeed, Transform, growth_diagnostic, omega,
                           taylor_coeffs, taylor_step)

EPS = DEFAULT_CONFIG.eps


class TestOmega:
    def test_tanh_legendre_center(self):
        assert omega(Transform.TANH_R, make_params(1, 0.0, 0.0), 0.0) == pytest.approx(2.0)

    def test_trivial_legendre_center(self):
        assert omega(Transform.TRIVIAL, make_params(1, 0.0, 0.0), 0.0) == pytest.approx(3.0)

    def test_angular_chebyshev_constant(self):
        # alpha = beta = -1/2 kills both singular terms: omega == L^2/4 = 1
        p = make_params(1, -0.5, -0.5)
        for theta in (0.1, 0.7, 1.9, 3.0):
            assert omega(Transform.ANGULAR, p, theta) == pytest.approx(1.0, rel=8 * EPS)

    def test_angular_chebyshev2_constant(self):
        p = make_params(3, 0.5, 0.5)
        ref = 0.25 * p.L**2
        for theta in (0.2, 1.2, 2.8):
            assert omega(Transform.ANGULAR, p, theta) == pytest.approx(ref, rel=8 * EPS)

    def test_domains(self):
        p = make_params(2, 0.0, 0.0)
        with pytest.raises(DomainError):
            omega(Transform.TANH_R, p, 1.0)
        with pytest.raises(DomainError):
            omega(Transform.ANGULAR, p, 0.0)


def _poly_data(params, x):
    L2m1 = params.L**2 - 1.0
    a2 = params.alpha**2
    b2 = params.beta**2
    Q = 4.0 * (1 - x * x) ** 2
    R = L2m1 * (1 - x * x) - 2 * (a2 - 1) * (1 + x) - 2 * (b2 - 1) * (1 - x)
    return Q, R


class TestTaylorCoeffs:
    def test_first_step_generic(self):
        p = make_params(7, 0.3, -0.6)
        seed = TaylorSeed(0.2, 1.3, 0.0)
        a = taylor_coeffs(p, seed, 2)
        Q, R = _poly_data(p, 0.2)
        assert a[2] == pytest.approx(-R * 1.3 / (2 * Q), rel=8 * EPS)

    def test_degree_one_maclaurin(self):
        # Ytilde = x sqrt(1 - x^2) = x - x^3/2 - ...
        p = make_params(1, 0.0, 0.0)
        a = taylor_coeffs(p, TaylorSeed(0.0, 0.0, 1.0), 3)
        assert a[0] == 0.0 and a[1] == 1.0
        assert a[2] == pytest.approx(0.0, abs=4 * EPS)
        assert a[3] == pytest.approx(-0.5, rel=8 * EPS)

    def test_chebyshev_high_precision_oracle(self):
        # Ytilde for alpha = beta = -1/2 is proportional to (1-x^2)^(1/4) T_n;
        # seed from the closed form, compare scaled derivatives to mpmath
        mp.mp.dps = 40
        n, x0 = 6, mp.mpf("0.2")

        def f(t):
            return (1 - t * t) ** mp.mpf("0.25") * mp.chebyt(n, t)

        series = mp.taylor(f, x0, 13)
        p = make_params(n, -0.5, -0.5)
        seed = TaylorSeed(float(x0), float(series[0]), float(series[1]))
        a = taylor_coeffs(p, seed, 12)
        for j in range(13):
            assert a[j] == pytest.approx(float(series[j]), rel=1e-10, abs=1e-25)

    def test_ode_residual_identity(self):
        # plugging the generated coefficients back into the five-term
        # recurrence must cancel to roundoff of its largest term
        for n, alpha, beta, x0 in [(4, 0.0, 0.0, 0.1), (9, -0.7, 2.3, -0.45), (16, 1.1, 0.4, 0.6)]:
            p = make_params(n, alpha, beta)
            seed = TaylorSeed(x0, 0.8, -0.3)
            N = 24
            a = taylor_coeffs(p, seed, N)
            L2m1 = p.L**2 - 1.0
            a2, b2 = alpha**2, beta**2
            Q = 4.0 * (1 - x0 * x0) ** 2
            Qp = 16 * x0**3 - 16 * x0
            Qpp = 48 * x0 * x0 - 16
            Qppp = 96 * x0
            Q4 = 96.0
            R = L2m1 * (1 - x0 * x0) - 2 * (a2 - 1) * (1 + x0) - 2 * (b2 - 1) * (1 - x0)
            Rp = -2 * L2m1 * x0 + 2 * (b2 - a2)
            Rpp = -2 * L2m1
            for j in range(N - 1):
                terms = [
                    (j + 2) * (j + 1) * Q * a[j + 2],
                    (j + 1) * j * Qp * a[j + 1],
                    (0.5 * j * (j - 1) * Qpp + R) * a[j],
                    ((j - 1) * (j - 2) / 6 * Qppp + Rp) * (a[j - 1] if j >= 1 else 0.0),
                    0.5 * ((j - 2) * (j - 3) / 12 * Q4 + Rpp) * (a[j - 2] if j >= 2 else 0.0),
                ]
                resid = abs(math.fsum(terms))
                assert resid <= 10 * EPS * max(abs(t) for t in terms)


class TestTaylorStep:
    def test_zero_step(self):
        p = make_params(5, 0.5, 0.5)
        r = taylor_step(p, TaylorSeed(0.3, 1.25, -0.5), 0.0)
        assert (r.y, r.yp, r.terms) == (1.25, -0.5, 1)

    def test_degree_one_closed_form(self):
        p = make_params(1, 0.0, 0.0)
        r = taylor_step(p, TaylorSeed(0.0, 0.0, 1.0), 0.5)
        assert r.y == pytest.approx(0.4330127018922193, rel=1e3 * EPS)
        assert r.yp == pytest.approx(0.5773502691896258, rel=1e3 * EPS)

    def test_chebyshev_closed_form_step(self):
        mp.mp.dps = 40
        n = 6

        def f(t):
            return (1 - t * t) ** mp.mpf("0.25") * mp.chebyt(n, t)

        seed = TaylorSeed(0.0, float(f(mp.mpf(0))), float(mp.diff(f, 0)))
        p = make_params(n, -0.5, -0.5)
        r = taylor_step(p, seed, 0.3)
        assert r.y == pytest.approx(float(f(mp.mpf("0.3"))), rel=1e3 * EPS)
        assert r.yp == pytest.approx(float(mp.diff(f, mp.mpf("0.3"))), rel=1e3 * EPS)

    def test_composability(self):
        p = make_params(8, -0.4, 1.7)
        seed = TaylorSeed(-0.1, 0.9, 2.0)
        h1, h2 = 0.13, 0.17
        direct = taylor_step(p, seed, h1 + h2)
        mid = taylor_step(p, seed, h1)
        hop = taylor_step(p, TaylorSeed(seed.x + h1, mid.y, mid.yp), h2)
        assert hop.y == pytest.approx(direct.y, rel=1e3 * EPS)
        assert hop.yp == pytest.approx(direct.yp, rel=1e3 * EPS)

    def test_reversibility(self):
        p = make_params(11, 0.2, 0.2)
        seed = TaylorSeed(0.25, -0.7, 1.1)
        fwd = taylor_step(p, seed, 0.2)
        back = taylor_step(p, TaylorSeed(0.45, fwd.y, fwd.yp), -0.2)
        assert back.y == pytest.approx(seed.y, rel=1e3 * EPS)
        assert back.yp == pytest.approx(seed.yp, rel=1e3 * EPS)

    def test_step_out_of_radius(self):
        p = make_params(3, 0.0, 0.0)
        with pytest.raises(StepOutOfRadius):
            taylor_step(p, TaylorSeed(0.5, 1.0, 0.0), 0.5)

    def test_no_convergence_with_tiny_cap(self):
        cfg = PrecisionConfig(max_taylor_terms=32)
        p = make_params(40, 0.0, 0.0)
        with pytest.raises(NoConvergence):
            taylor_step(p, TaylorSeed(0.0, 1.0, 0.0), 0.45, cfg)

    def test_geometric_substepping_near_endpoint(self):
        # target close to the singular endpoint: still converges, cost O(log)
        p = make_params(12, 0.0, 0.0)
        seed = TaylorSeed(0.0, 1.0, 0.0)
        r = taylor_step(p, seed, 0.9999)
        direct = taylor_step(p, TaylorSeed(0.9, *(lambda q: (q.y, q.yp))(taylor_step(p, seed, 0.9))), 0.0999)
        assert r.y == pytest.approx(direct.y, rel=1e-11)


class TestGrowthDiagnostic:
    def test_polynomial_case_collapses(self):
        # alpha = beta = 1 makes Ytilde a polynomial of degree n + 2
        p = make_params(4, 1.0, 1.0)
        a = taylor_coeffs(p, TaylorSeed(0.0, 1.0, 0.0), 63)
        assert growth_diagnostic(a, 0.0) == 0.0

    def test_legendre_rate(self):
        p = make_params(10, 0.0, 0.0)
        x0 = 0.5
        from gjquad.ratios import log_deriv_tilde  # for the seed values

        def jac(n, x):
            if n == 0:
                return 1.0
            pm1, pv = 1.0, x
            for k in range(1, n):
                pv, pm1 = ((2 * k + 1) * x * pv - k * pm1) / (k + 1), pv
            return pv

        y = math.sqrt(1 - x0 * x0) * jac(10, x0)
        ld = log_deriv_tilde(p, x0)
        a = taylor_coeffs(p, TaylorSeed(x0, y, y * ld), 63)
        est = growth_diagnostic(a, x0)
        assert est == pytest.approx(2.0, rel=0.25)

    def test_one_sided_odd_exponent(self):
        # alpha odd: only the x = -1 singularity limits the radius
        p = make_params(10, 1.0, 0.5)
        seed = TaylorSeed(-0.5, 1.0, 0.4)
        a = taylor_coeffs(p, seed, 63)
        est = growth_diagnostic(a, -0.5)
        assert est == pytest.approx(2.0, rel=0.25)

    def test_needs_enough_coefficients(self):
        with pytest.raises(DomainError):
            growth_diagnostic([1.0] * 10, 0.0)
