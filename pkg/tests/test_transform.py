import math

import numpy as np
import pytest

from bandlim import (PAPER_QUARTER, BesselSeries, DomainError,
                     LegendreSeries, LineIntegralParams, RuleTooSmallError,
                     TransformConfig, bauer_partial_sum, bessel_projection,
                     calibrate_normalization, coeff_bar, coeff_unbar,
                     forward_transform, gauss_legendre_rule, inverse_transform,
                     legendre_projection, orthogonality_matrix_j, roundtrip,
                     series_from_json, series_to_json, spherical_j)


@pytest.fixture(scope="module")
def config():
    return TransformConfig()


class TestSeriesTypes:
    def test_legendre_eval(self):
        f = LegendreSeries([1.0, 2.0, 3.0])
        t = 0.4
        expected = 1.0 + 2.0 * t + 3.0 * (3 * t * t - 1) / 2
        assert complex(f(t)) == pytest.approx(expected, abs=1e-14)

    def test_bessel_eval(self):
        g = BesselSeries([0.0, 1.0])
        assert complex(g(1.0)) == pytest.approx(spherical_j(1, 1.0),
                                                abs=1e-14)

    def test_validation(self):
        with pytest.raises(DomainError):
            LegendreSeries([])
        with pytest.raises(DomainError):
            BesselSeries([1.0, math.nan])

    def test_bar_unbar_roundtrip(self):
        g = BesselSeries([1 + 1j, 2.0, -3j, 0.5])
        back = coeff_unbar(coeff_bar(g))
        np.testing.assert_allclose(back.coeffs, g.coeffs, atol=1e-15)

    def test_bar_values(self):
        g = BesselSeries([2.0, 2j])
        f = coeff_bar(g)
        np.testing.assert_allclose(f.coeffs, [1.0, 1.0], atol=1e-15)


class TestForward:
    def test_p0_at_pi(self, config):
        f = LegendreSeries([1.0])
        assert abs(forward_transform(f, math.pi, config)) < 1e-13

    def test_single_modes(self, config):
        # forward of P_n is 2 i^n j_n
        for n in range(11):
            coeffs = np.zeros(n + 1)
            coeffs[n] = 1.0
            f = LegendreSeries(coeffs)
            for z in [0.5, 1.0, 5.0, 10.0]:
                got = forward_transform(f, z, config)
                want = 2.0 * 1j ** n * spherical_j(n, z)
                assert abs(got - want) < 1e-12

    def test_rational_function(self, config):
        val = forward_transform(lambda t: 1.0 / (1.0 + t * t), 0.0, config)
        assert abs(val - math.pi / 2) < 1e-12


class TestInverse:
    def test_recovers_p0(self, config):
        g = BesselSeries([2.0])
        assert abs(inverse_transform(g, 0.0, config) - 1.0) < 1e-6

    def test_paper_quarter_value(self):
        cfg = TransformConfig(normalization=PAPER_QUARTER)
        g = BesselSeries([2.0])
        val = inverse_transform(g, 0.0, cfg)
        assert abs(val - 2 * math.pi / 4) < 1e-6

    def test_odd_mode_vanishes_at_zero(self, config):
        g = BesselSeries([0.0, 2j])
        assert abs(inverse_transform(g, 0.0, config)) < 1e-8

    def test_domain(self, config):
        g = BesselSeries([1.0])
        for t in [1.0, -1.0, 1.5]:
            with pytest.raises(DomainError):
                inverse_transform(g, t, config)

    def test_interior_values(self, config):
        # inverse of 2 j_0 is the constant 1 on (-1, 1)
        g = BesselSeries([2.0])
        for t in [-0.9, -0.25, 0.5, 0.95]:
            assert abs(inverse_transform(g, t, config) - 1.0) < 1e-6


class TestCalibration:
    def test_value(self, config):
        c = calibrate_normalization(config)
        assert abs(c - 6.2831853) < 1e-5

    def test_mode_two_consistency(self, config):
        c0 = calibrate_normalization(config)
        c2 = calibrate_normalization(config, mode=2)
        assert abs(c2 - c0) < 1e-5

    def test_odd_mode_rejected(self, config):
        with pytest.raises(DomainError):
            calibrate_normalization(config, mode=1)

    def test_divisor_conventions(self, config):
        assert config.divisor() == calibrate_normalization(config)
        cfg = TransformConfig(normalization=PAPER_QUARTER)
        assert cfg.divisor() == 4.0

    def test_bad_normalization(self):
        with pytest.raises(DomainError):
            TransformConfig(normalization="whatever")


class TestProjections:
    def test_legendre_projection_of_mode(self):
        rule = gauss_legendre_rule(32)
        f = LegendreSeries([0.0, 0.0, 0.0, 1.0])
        proj = legendre_projection(f, 5, rule)
        want = np.array([0, 0, 0, 1, 0, 0], dtype=complex)
        np.testing.assert_allclose(proj.coeffs, want, atol=1e-13)

    def test_rule_too_small(self):
        rule = gauss_legendre_rule(4)
        with pytest.raises(RuleTooSmallError):
            legendre_projection(lambda t: t, 6, rule)

    def test_bessel_projection_of_mode(self, config):
        g = BesselSeries([0.0, 0.0, 1.0])
        proj = bessel_projection(g, 4, config)
        want = np.array([0, 0, 1, 0, 0], dtype=complex)
        assert np.max(np.abs(proj.coeffs - want)) < 1e-6

    def test_bessel_projection_linearity(self, config):
        g = BesselSeries([0.5, 0.0, -2.0])
        proj = bessel_projection(g, 2, config)
        want = np.array([0.5, 0.0, -2.0], dtype=complex)
        assert np.max(np.abs(proj.coeffs - want)) < 1e-6


class TestBauer:
    def test_plane_wave(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            z = float(rng.uniform(-10, 10))
            t = float(rng.uniform(-1, 1))
            s = bauer_partial_sum(z, t, 60)
            assert abs(s - np.exp(1j * z * t)) < 1e-10

    def test_endpoint(self):
        s = bauer_partial_sum(1.0, 1.0, 40)
        assert abs(s - np.exp(1j)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            bauer_partial_sum(1.0, 1.5, 10)


class TestOrthogonality:
    def test_gram_structure(self):
        gram = orthogonality_matrix_j(4, LineIntegralParams(tol=1e-8))
        assert abs(gram[0, 2]) < 1e-6
        off = gram - np.diag(gram.diagonal())
        assert np.max(np.abs(off)) < 1e-6
        n = np.arange(5)
        scaled = gram.diagonal() * (2 * n + 1)
        const = float(np.mean(scaled))
        assert np.max(np.abs(scaled - const)) / const < 1e-4

    def test_nmax_limit(self):
        with pytest.raises(DomainError):
            orthogonality_matrix_j(64, LineIntegralParams())


class TestRoundtrip:
    def test_two_j0(self, config):
        g = BesselSeries([2.0])
        val = roundtrip(g, 1.0, config)
        assert abs(val - 1.6829420) < 1e-5

    def test_random_series(self, config):
        rng = np.random.default_rng(11)
        coeffs = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        g = BesselSeries(coeffs)
        for z in [0.0, 2.0]:
            got = roundtrip(g, z, config)
            want = complex(g(z))
            assert abs(got - want) <= 1e-5 * max(1.0, abs(want))


class TestJson:
    def test_roundtrip(self):
        for series in (LegendreSeries([1.0, 2j]), BesselSeries([0.5, -1.0])):
            back = series_from_json(series_to_json(series))
            assert type(back) is type(series)
            np.testing.assert_allclose(back.coeffs, series.coeffs, atol=0)

    def test_malformed(self):
        for doc in ({}, {"kind": "bessel"}, {"kind": "nope", "coeffs": []},
                    {"kind": "legendre", "coeffs": [[1.0]]}):
            with pytest.raises(DomainError):
                series_from_json(doc)
