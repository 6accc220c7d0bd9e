import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy import special as sp

from gtld import properties
from gtld.model import make_model, model_from_params

from conftest import random_params


def _light_tail(p):
    """Push polynomial-tail parameter sets into finite-mean territory."""
    import dataclasses

    return dataclasses.replace(p, beta=max(p.beta, 3.5))


def exp_model(beta=2.0):
    """theta=1, lam=0 GTE is the plain exponential with rate beta."""
    return make_model("gte", beta=beta, theta=1.0, lam=0.0)


class TestMoments:
    def test_exponential_raw_moments(self):
        m = exp_model(2.0)
        for r in (1, 2, 3, 4):
            assert properties.raw_moment(m, r) == pytest.approx(
                math.gamma(r + 1) / 2.0**r, rel=1e-9
            )

    def test_order_validated(self):
        with pytest.raises(ValueError):
            properties.raw_moment(exp_model(), 0)

    def test_exponential_incomplete_moment(self):
        m = exp_model(2.0)
        want = sp_integrate.quad(lambda x: x * 2 * math.exp(-2 * x), 0, 0.5)[0]
        assert properties.incomplete_moment(m, 1, 0.5) == pytest.approx(want, rel=1e-9)
        assert properties.incomplete_moment(m, 1, 0.0) == 0.0

    def test_incomplete_below_support_rejected(self):
        m = make_model("gtp1", beta=3.0, theta=1.0, lam=0.0, alpha=2.0)
        with pytest.raises(ValueError):
            properties.incomplete_moment(m, 1, 1.0)

    def test_incomplete_converges_to_full(self, family, rng):
        m = model_from_params(family, _light_tail(random_params(family, rng)))
        full = properties.raw_moment(m, 1)
        z = m.quantile(1 - 1e-12)
        assert properties.incomplete_moment(m, 1, z) == pytest.approx(full, rel=1e-6)

    def test_heavy_tail_divergence_detected(self):
        # Pareto-type tail: E[X^2] infinite when the tail index is too small.
        m = make_model("gtp1", beta=1.5, theta=1.0, lam=0.0, alpha=1.0)
        with pytest.raises(properties.DivergenceError):
            properties.raw_moment(m, 2)

    def test_gtw_series_matches_quadrature(self, rng):
        for _ in range(8):
            p = random_params("gtw", rng)
            m = model_from_params("gtw", p)
            q = properties.raw_moment(m, 1, method="quadrature")
            s = properties.raw_moment(m, 1, method="series")
            assert s == pytest.approx(q, rel=1e-6)
            z = m.quantile(0.7)
            qi = properties.incomplete_moment(m, 1, z, method="quadrature")
            si = properties.incomplete_moment(m, 1, z, method="series")
            assert si == pytest.approx(qi, rel=1e-6)

    def test_series_wrong_family_rejected(self):
        with pytest.raises(ValueError):
            properties.raw_moment(exp_model(), 1, method="series")


class TestPwmAndMgf:
    def test_pwm_zeroth_is_one_over_s_plus_one(self):
        # E[F(X)^s] = 1/(s+1) for any continuous distribution.
        m = make_model("gtw", beta=1.2, theta=1.7, lam=-0.3, alpha=1.5)
        for s in (0, 1, 3):
            assert properties.pwm(m, 0, s) == pytest.approx(1 / (s + 1), rel=1e-8)

    def test_exponential_pwm(self):
        m = exp_model(2.0)
        want = sp_integrate.quad(
            lambda x: x * (1 - math.exp(-2 * x)) * 2 * math.exp(-2 * x), 0, 60
        )[0]
        assert properties.pwm(m, 1, 1) == pytest.approx(want, rel=1e-9)

    def test_exponential_mgf(self):
        m = exp_model(2.0)
        for t in (-1.0, 0.0, 0.5, 1.0):
            assert properties.mgf(m, t) == pytest.approx(2.0 / (2.0 - t), rel=1e-8)

    def test_mgf_divergence(self):
        with pytest.raises(properties.DivergenceError):
            properties.mgf(exp_model(2.0), 2.5)

    def test_mgf_first_derivative_is_mean(self, family, rng):
        m = model_from_params(family, _light_tail(random_params(family, rng)))
        h = 1e-5
        fd = (properties.mgf(m, h) - properties.mgf(m, -h)) / (2 * h)
        assert fd == pytest.approx(properties.raw_moment(m, 1), rel=1e-4)


class TestStressStrength:
    def test_closed_form(self):
        assert properties.stress_strength(0.0, 0.0) == pytest.approx(0.5)
        assert properties.stress_strength(-1.0, 1.0) == pytest.approx(5 / 6)
        assert properties.stress_strength(0.3, -0.2) == pytest.approx((-0.2 - 0.3 + 3) / 6)

    def test_symmetry(self):
        r12 = properties.stress_strength(0.4, -0.7)
        r21 = properties.stress_strength(-0.7, 0.4)
        assert r12 + r21 == pytest.approx(1.0)


class TestOrderStatistics:
    def test_density_integrates_to_one(self):
        m = make_model("gtw", beta=2.0, theta=0.9, lam=0.4, alpha=1.8)
        for n, r in ((5, 1), (5, 5), (7, 3)):
            val = sp_integrate.quad(
                lambda x: properties.order_stat_pdf(m, n, r, x), 0, 30, limit=200
            )[0]
            assert val == pytest.approx(1.0, abs=1e-7)

    def test_n1_is_parent_density(self):
        m = exp_model(1.3)
        for x in (0.2, 1.0, 2.5):
            assert properties.order_stat_pdf(m, 1, 1, x) == pytest.approx(
                m.pdf(x), rel=1e-12
            )

    def test_min_of_exponentials_is_exponential(self):
        # min of n iid Exp(beta) is Exp(n*beta)
        m, n = exp_model(1.0), 4
        for x in (0.1, 0.5, 1.0):
            assert properties.order_stat_pdf(m, n, 1, x) == pytest.approx(
                n * math.exp(-n * x), rel=1e-10
            )

    def test_rank_validation(self):
        with pytest.raises(ValueError):
            properties.order_stat_pdf(exp_model(), 3, 4, 1.0)


class TestEntropies:
    def test_exponential_renyi_closed_form(self):
        # I_rho = (1/(1-rho)) log(beta^{rho-1}/rho)
        for beta in (0.5, 1.0, 2.0):
            m = exp_model(beta)
            for rho in (2.0, 3.0, 5.0):
                want = (math.log(beta ** (rho - 1) / rho)) / (1 - rho)
                assert properties.renyi_entropy(m, rho) == pytest.approx(want, rel=1e-8)

    def test_renyi_rho_validation(self):
        with pytest.raises(ValueError):
            properties.renyi_entropy(exp_model(), 1.0)

    def test_exponential_q_entropy(self):
        # H_q = (1/(q-1)) log(1 - beta^{q-1}/q), defined while the integral < 1
        m = exp_model(1.0)
        for q in (2.0, 4.0):
            want = math.log(1 - 1 / q) / (q - 1)
            assert properties.q_entropy(m, q) == pytest.approx(want, rel=1e-8)

    def test_q_entropy_domain_error(self):
        # beta^{q-1}/q >= 1 puts the argument of the log at or below zero
        with pytest.raises(properties.EntropyDomainError):
            properties.q_entropy(exp_model(3.0), 2.0)

    def test_divergent_density_power(self):
        # theta small makes f^rho non-integrable at the support edge
        m = make_model("gtw", beta=1.0, theta=0.2, lam=0.0, alpha=1.0)
        with pytest.raises(properties.DivergenceError):
            properties.renyi_entropy(m, 4.0)

    def test_truncated_entropy_is_finite_where_full_diverges(self):
        m = make_model("gtw", beta=1.0, theta=0.2, lam=0.0, alpha=1.0)
        val = properties.renyi_entropy(m, 4.0, lower=0.01)
        assert math.isfinite(val)


class TestResidualLife:
    def test_exponential_memoryless(self):
        m = exp_model(2.0)
        for t in (0.5, 1.0, 3.0):
            assert properties.residual_moment(m, 1, t) == pytest.approx(0.5, rel=1e-8)

    def test_residual_order_validated(self):
        with pytest.raises(ValueError):
            properties.residual_moment(exp_model(), 0, 1.0)

    def test_reversed_residual_oracle(self):
        m = exp_model(1.0)
        t = 2.0
        want = sp_integrate.quad(
            lambda x: (t - x) * m.pdf(x), 0, t
        )[0] / m.cdf(t)
        assert properties.reversed_residual_moment(m, 1, t) == pytest.approx(
            want, rel=1e-8
        )
        assert properties.reversed_residual_moment(m, 0, t) == pytest.approx(1.0)


class TestCigf:
    def test_exponential_beta_function(self):
        # With u = F: integral F^m S^n dx = B(m+1, n)/beta for n >= 1.
        for beta in (1.0, 2.0):
            m = exp_model(beta)
            for mm, nn in ((1, 1), (2, 1), (1.5, 2.0)):
                want = sp.beta(mm + 1, nn) / beta
                assert properties.cigf(m, mm, nn) == pytest.approx(want, rel=1e-7)

    def test_survival_only_marginal(self):
        # integral of S^n alone is the mean for n=1
        m = exp_model(2.0)
        assert properties.cigf(m, 0, 1) == pytest.approx(0.5, rel=1e-8)

    def test_cdf_only_marginal_diverges(self):
        with pytest.raises(properties.DivergenceError):
            properties.cigf(exp_model(), 1, 0)
