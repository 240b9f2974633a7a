"""Reference kernels."""

import numpy as np
import pytest
from scipy import integrate

from noncompact_kernels.errors import UnsupportedError
from noncompact_kernels.manifolds import Space, SpdPoint, act, radial_point, random_isometry, random_points
from noncompact_kernels.oracles import (
    MillsonSeries,
    has_oracle,
    heat_h2,
    heat_h3,
    heat_mass,
    heat_spd2,
    oracle_for,
)
from noncompact_kernels.spectral import KernelSpec


class TestHyperbolicHeat:
    def test_h3_closed_form(self):
        assert heat_h3(0.0, 1.0) == 1.0
        assert heat_h3(1.0, 2.0) == pytest.approx(np.exp(-1 / 8) / np.sinh(1.0))

    def test_h2_normalized_and_decreasing(self):
        values = [heat_h2(r, 1.0) for r in (0.0, 0.5, 1.0, 2.0, 4.0)]
        assert values[0] == 1.0
        assert all(a > b > 0.0 for a, b in zip(values, values[1:], strict=False))
        assert heat_h2(1e-4, 1.0) == pytest.approx(1.0, abs=1e-6)

    def test_h2_abel_integral(self):
        # direct quadrature of int_r^inf s exp(-s^2/2k^2) / sqrt(cosh s - cosh r) ds with s = r + u^2
        def abel(r, kappa):
            def integrand(u):
                s = r + u * u
                return 2 * u * s * np.exp(-(s**2) / (2 * kappa**2)) / np.sqrt(np.cosh(s) - np.cosh(r))

            return integrate.quad(integrand, 0.0, 12.0, limit=200)[0]

        kappa = 1.3
        assert heat_h2(1.5, kappa) == pytest.approx(abel(1.5, kappa) / abel(0.0, kappa), rel=1e-6)

    def test_millson_h3_matches_closed_form(self):
        series = MillsonSeries(3, 0.9)
        for r in (0.01, 0.3, 2.0):
            assert series(r) == pytest.approx(heat_h3(r, 0.9), rel=1e-6)

    def test_millson_h5_is_lowered_h3(self):
        kappa = 1.1
        series = MillsonSeries(5, kappa)

        def lowered(r, step=1e-5):
            derivative = (heat_h3(r + step, kappa) - heat_h3(r - step, kappa)) / (2 * step)
            return -derivative / np.sinh(r)

        assert series(1.0) / series(2.0) == pytest.approx(lowered(1.0) / lowered(2.0), rel=1e-6)
        assert series(0.0) == 1.0
        assert series(0.03) == pytest.approx(series(0.0), abs=5e-3)

    def test_millson_rejects_even(self):
        with pytest.raises(UnsupportedError):
            MillsonSeries(4, 1.0)


class TestSpdHeat:
    def test_normalized_and_invariant(self, rng):
        space = Space.parse("spd2")
        x, y = random_points(space, 2, rng)
        assert heat_spd2(x, x, 1.0) == pytest.approx(1.0, abs=1e-9)
        g = random_isometry(space, rng)
        value = heat_spd2(x, y, 1.0)
        assert heat_spd2(act(g, x), act(g, y), 1.0) == pytest.approx(value, rel=1e-6)
        assert heat_spd2(y, x, 1.0) == pytest.approx(value, rel=1e-7)
        assert 0.0 < value < 1.0

    def test_scalar_direction_is_gaussian(self):
        # along the identity the kernel is exp(-|H|^2 / 2 kappa^2) exactly
        t = 0.6
        x = SpdPoint(np.eye(2) * np.exp(t))
        assert heat_spd2(SpdPoint(np.eye(2)), x, 1.0) == pytest.approx(np.exp(-(t**2) / 4), rel=1e-9)


class TestHeatMass:
    def test_h3_closed_form(self):
        mass = heat_mass(Space.parse("h3"))
        u = 0.7
        assert mass(u) == pytest.approx(np.sqrt(np.pi) / (2 * u**1.5) * np.exp(-u), rel=1e-10)

    @pytest.mark.parametrize("u", [0.05, 1.0, 4.0])
    def test_h2_matches_direct_quadrature(self, u):
        direct = 2 * integrate.quad(lambda l: l * np.tanh(np.pi * l) * np.exp(-u * (l**2 + 0.25)), 0.0, np.inf)[0]
        assert heat_mass(Space.parse("h2"))(u) == pytest.approx(direct, rel=1e-7)

    def test_spd2_matches_direct_quadrature(self):
        u = 0.8

        def integrand(l2, l1):
            gap = np.pi * abs(l1 - l2)
            return gap * np.tanh(gap) * np.exp(-u * (l1**2 + l2**2))

        direct = integrate.dblquad(integrand, -12.0, 12.0, -12.0, 12.0)[0]
        mass = heat_mass(Space.parse("spd2"), "shifted")
        assert mass(u) == pytest.approx(direct, rel=1e-6)

    def test_unsupported_space(self):
        with pytest.raises(UnsupportedError):
            heat_mass(Space.parse("spd3"))


class TestMatern:
    def test_h3_matches_spectral_integral(self):
        nu, kappa, r = 1.5, 1.0, 1.2
        space = Space.parse("h3")
        gamma = 2 * nu / kappa**2 + 1.0

        def spectral(radius):
            def zonal(lam):
                # sin(lam r) / (lam sinh r), written with sinc to stay finite at lam = 0
                return radius * np.sinc(lam * radius / np.pi) / np.sinh(radius) if radius > 0 else 1.0

            return integrate.quad(lambda lam: zonal(lam) * lam**2 * (gamma + lam**2) ** (-nu - 1.5), 0.0, np.inf, limit=400)[0]

        oracle = oracle_for(space, KernelSpec(nu=nu, kappa=kappa))
        expected = spectral(r) / spectral(0.0)
        assert oracle(radial_point(space, r), space.base_point()) == pytest.approx(expected, rel=1e-5)

    def test_normalized_at_coincident_points(self):
        space = Space.parse("spd2")
        oracle = oracle_for(space, KernelSpec(nu=2.5, kappa=1.0))
        x0 = space.base_point()
        assert oracle(x0, x0) == pytest.approx(1.0, rel=1e-8)
        assert 0.0 < oracle(radial_point(space, 1.0), x0) < 1.0

    def test_registry(self):
        assert has_oracle(Space.parse("h7"))
        assert not has_oracle(Space.parse("h4"))
        assert not has_oracle(Space.parse("spd3"))
        with pytest.raises(UnsupportedError):
            oracle_for(Space.parse("h4"), KernelSpec(kappa=1.0))
