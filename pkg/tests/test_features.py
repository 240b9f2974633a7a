"""Zonal spherical functions, feature bases and kernel estimators."""

import numpy as np
import pytest

from noncompact_kernels.checks import check_psd
from noncompact_kernels.errors import DimensionMismatchError, SpaceMismatchError
from noncompact_kernels.features import (
    FeatureBasis,
    build_basis,
    kernel_estimate,
    kernel_matrix,
    limiting_kernel,
    prior_sample,
    zonal_spherical_hyp_ball,
    zonal_spherical_mc,
)
from noncompact_kernels.manifolds import Space, act, radial_point, random_isometry, random_points
from noncompact_kernels.oracles import oracle_for
from noncompact_kernels.spectral import KernelSpec
from noncompact_kernels.utils import make_rng


def within(estimate, expected, sigmas=5.0, floor=1e-3):
    return abs(estimate.value - expected) <= sigmas * estimate.stderr + floor


class TestZonal:
    def test_h3_closed_form(self, rng):
        # sin(lambda r) / (lambda sinh r)
        lam, r = 1.3, 1.0
        estimate = zonal_spherical_mc(lam, radial_point(Space.parse("h3"), r), 20_000, rng)
        expected = np.sin(lam * r) / (lam * np.sinh(r))
        assert abs(estimate.value.real - expected) <= 5 * estimate.stderr + 1e-3
        assert abs(estimate.value.imag) <= 5 * estimate.stderr + 1e-3

    def test_ball_model_at_zero(self, rng):
        r = 1.2
        b = np.array([np.tanh(r / 2), 0.0, 0.0])
        estimate = zonal_spherical_hyp_ball(0.0, b, 20_000, rng)
        assert abs(estimate.value.real - r / np.sinh(r)) <= 5 * estimate.stderr + 1e-3

    def test_base_point_is_one(self, rng):
        for name in ("h2", "spd3"):
            space = Space.parse(name)
            estimate = zonal_spherical_mc(np.ones(space.rank), space.base_point(), 10, rng)
            assert estimate.value.real == pytest.approx(1.0)
            assert estimate.value.imag == pytest.approx(0.0)

    def test_limiting_kernel(self, rng):
        space = Space.parse("spd2")
        x, y = random_points(space, 2, rng)
        same = limiting_kernel(x, x, 100, rng)
        assert same.value == pytest.approx(1.0, abs=1e-9)
        other = limiting_kernel(x, y, 4000, rng)
        assert 0.0 < other.value <= 1.0 + 5 * other.stderr


class TestFeatureBasis:
    def test_build_is_deterministic(self):
        spec = KernelSpec(kappa=1.0)
        space = Space.parse("spd2")
        first = build_basis(spec, space, 64, "rejection", make_rng(5, "basis"))
        second = build_basis(spec, space, 64, "rejection", make_rng(5, "basis"))
        np.testing.assert_array_equal(first.lambdas, second.lambdas)
        np.testing.assert_array_equal(first.haars, second.haars)
        np.testing.assert_array_equal(first.weights, second.weights)

    def test_arrays_are_read_only(self, rng):
        basis = build_basis(KernelSpec(kappa=1.0), Space.parse("h2"), 8, "rejection", rng)
        with pytest.raises(ValueError):
            basis.lambdas[0] = 0.0

    def test_validation(self, rng):
        space = Space.parse("h2")
        with pytest.raises(SpaceMismatchError):
            FeatureBasis(
                space=space,
                spec=KernelSpec(kappa=1.0),
                lambdas=np.zeros(2),
                haars=np.full((2, 2, 2), 0.5),
                weights=np.ones(2, dtype=complex),
            )
        with pytest.raises(DimensionMismatchError):
            build_basis(KernelSpec(kappa=1.0), space, 0, "rejection", rng)

    def test_importance_weights(self, rng):
        basis = build_basis(KernelSpec(nu=1.5, kappa=1.0), Space.parse("spd2"), 500, "importance", rng)
        assert basis.importance_weights is not None
        assert np.mean(basis.importance_weights**2) == pytest.approx(1.0)

    def test_fresh_weights_keep_features(self, rng):
        basis = build_basis(KernelSpec(kappa=1.0), Space.parse("h3"), 16, "rejection", rng)
        fresh = basis.with_fresh_weights(rng)
        np.testing.assert_array_equal(fresh.lambdas, basis.lambdas)
        assert not np.array_equal(fresh.weights, basis.weights)


class TestKernelEstimates:
    @pytest.mark.parametrize("mode", ["psd", "plain"])
    def test_variance_at_base_point(self, rng, mode):
        space = Space.parse("h3")
        basis = build_basis(KernelSpec(kappa=1.0, sigma2=2.5), space, 50, "rejection", rng)
        x0 = space.base_point()
        estimate = kernel_estimate(basis, x0, x0, mode)
        assert estimate.value == pytest.approx(2.5)
        assert estimate.stderr == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize(
        ("name", "spec"),
        [
            ("h3", KernelSpec(kappa=1.0)),
            ("h2", KernelSpec(kappa=0.8)),
            ("spd2", KernelSpec(kappa=1.0)),
            ("h3", KernelSpec(nu=2.5, kappa=1.0)),
        ],
    )
    def test_matches_reference(self, name, spec):
        space = Space.parse(name)
        basis = build_basis(spec, space, 4000, "rejection", make_rng(11, "basis"))
        oracle = oracle_for(space, spec)
        x0 = space.base_point()
        for r in (0.5, 1.5):
            x = radial_point(space, r)
            assert within(kernel_estimate(basis, x, x0, "plain"), oracle(x, x0))
            assert within(kernel_estimate(basis, x, x0, "psd"), oracle(x, x0))

    def test_importance_matches_reference(self):
        space = Space.parse("h2")
        spec = KernelSpec(kappa=1.0)
        basis = build_basis(spec, space, 4000, "importance", make_rng(3, "basis"))
        x, x0 = radial_point(space, 1.0), space.base_point()
        estimate = kernel_estimate(basis, x, x0, "plain")
        assert abs(estimate.value - oracle_for(space, spec)(x, x0)) <= 5 * estimate.stderr + 0.02

    def test_gram_matrix_is_psd(self, rng):
        space = Space.parse("spd3")
        basis = build_basis(KernelSpec(nu=1.5, kappa=1.0), space, 300, "rejection", rng)
        K = kernel_matrix(basis, random_points(space, 12, rng))
        ok, issues = check_psd(K)
        assert ok, issues

    def test_prior_variance_at_base_point(self, rng):
        space = Space.parse("h2")
        basis = build_basis(KernelSpec(kappa=1.0, sigma2=1.7), space, 40, "rejection", rng)
        x0 = [space.base_point()]
        values = np.array([prior_sample(basis.with_fresh_weights(rng), x0)[0] for _ in range(3000)])
        assert values.var() == pytest.approx(1.7, rel=0.1)


class TestEstimatorStatistics:
    def test_plain_estimator_spread_across_bases(self):
        space = Space.parse("h3")
        spec = KernelSpec(kappa=1.0, sigma2=1.5)
        L, num_bases = 64, 500
        points = random_points(space, 10, make_rng(5, "points"))
        pairs = list(zip(points[:5], points[5:], strict=True))
        plain = np.empty((num_bases, len(pairs)))
        psd = np.empty_like(plain)
        for i in range(num_bases):
            basis = build_basis(spec, space, L, "rejection", make_rng(5, "basis", i))
            for j, (x, y) in enumerate(pairs):
                plain[i, j] = kernel_estimate(basis, x, y, "plain").value
                psd[i, j] = kernel_estimate(basis, x, y, "psd").value
        assert np.all(plain.std(axis=0, ddof=1) <= 1.2 * spec.sigma2 / np.sqrt(L))
        assert np.all(np.isfinite(psd.std(axis=0, ddof=1)))

    @pytest.mark.parametrize("mode", ["psd", "plain"])
    def test_unbiased_over_bases(self, mode):
        space = Space.parse("h3")
        spec = KernelSpec(kappa=1.0)
        oracle = oracle_for(space, spec)
        x0 = space.base_point()
        points = [radial_point(space, r) for r in (0.5, 1.5)]
        values = np.array(
            [
                [kernel_estimate(basis, x, x0, mode).value for x in points]
                for basis in (build_basis(spec, space, 50, "rejection", make_rng(8, "basis", i)) for i in range(200))
            ]
        )
        expected = np.array([oracle(x, x0) for x in points])
        tolerance = 5 * values.std(axis=0, ddof=1) / np.sqrt(len(values)) + 1e-3
        assert np.all(np.abs(values.mean(axis=0) - expected) <= tolerance)

    @pytest.mark.parametrize("name", ["h3", "spd2"])
    @pytest.mark.parametrize("mode", ["psd", "plain"])
    def test_stationary_under_isometries(self, rng, name, mode):
        space = Space.parse(name)
        basis = build_basis(KernelSpec(nu=1.5, kappa=1.0), space, 4000, "rejection", make_rng(21, "basis"))
        x, y = random_points(space, 2, rng, radius=1.5)
        g = random_isometry(space, rng)
        before = kernel_estimate(basis, x, y, mode)
        after = kernel_estimate(basis, act(g, x), act(g, y), mode)
        assert abs(before.value - after.value) <= 5 * np.hypot(before.stderr, after.stderr) + 1e-3


class TestLimitingKernelBound:
    @pytest.mark.parametrize("name", ["h2", "spd2"])
    @pytest.mark.parametrize(
        "spec",
        [
            KernelSpec(kappa=1.0, sigma2=2.0),
            KernelSpec(nu=1.5, kappa=1.0),
            KernelSpec(nu=0.5, kappa=3.0),
            KernelSpec(kappa=100.0, laplacian="shifted"),
        ],
    )
    def test_normalized_kernels_lie_below(self, name, spec):
        space = Space.parse(name)
        basis = build_basis(spec, space, 4000, "rejection", make_rng(2, "basis"))
        x0 = space.base_point()
        for r in (0.5, 1.0, 2.0):
            x = radial_point(space, r)
            k_hat = kernel_estimate(basis, x, x0, "plain")
            limit = limiting_kernel(x, x0, 20_000, make_rng(2, "zonal"))
            bound = limit.value + 5 * np.hypot(k_hat.stderr / spec.sigma2, limit.stderr)
            assert k_hat.value / spec.sigma2 <= bound

    @pytest.mark.parametrize("name", ["h2", "spd2"])
    def test_large_length_scale(self, name):
        space = Space.parse(name)
        x, x0 = radial_point(space, 1.0), space.base_point()
        limit = limiting_kernel(x, x0, 20_000, make_rng(4, "zonal"))

        shifted_heat = build_basis(KernelSpec(kappa=100.0, laplacian="shifted"), space, 4000, "rejection", make_rng(4, "basis"))
        reached = kernel_estimate(shifted_heat, x, x0, "plain")
        assert abs(reached.value - limit.value) <= 5 * np.hypot(reached.stderr, limit.stderr) + 1e-3

        ordinary_matern = build_basis(KernelSpec(nu=0.5, kappa=100.0), space, 4000, "rejection", make_rng(4, "basis", 1))
        below = kernel_estimate(ordinary_matern, x, x0, "plain")
        assert below.value + 5 * np.hypot(below.stderr, limit.stderr) < limit.value

    def test_shifted_matern_matches_reference(self):
        space = Space.parse("h3")
        spec = KernelSpec(nu=1.5, kappa=1.0, laplacian="shifted")
        basis = build_basis(spec, space, 4000, "rejection", make_rng(6, "basis"))
        oracle = oracle_for(space, spec)
        x0 = space.base_point()
        for r in (0.5, 1.5):
            x = radial_point(space, r)
            assert within(kernel_estimate(basis, x, x0, "plain"), oracle(x, x0))
