"""Gaussian-process regression by pathwise conditioning."""

import numpy as np
import pytest
from scipy import stats

from noncompact_kernels.errors import DimensionMismatchError, FactorizationError, SpaceMismatchError
from noncompact_kernels.experiments import sample_prior
from noncompact_kernels.features import build_basis, kernel_matrix
from noncompact_kernels.gp import (
    Dataset,
    OracleKernel,
    factorize,
    log_marginal_likelihood,
    posterior_moments,
    posterior_sample,
)
from noncompact_kernels.manifolds import Space, radial_point, random_points
from noncompact_kernels.oracles import oracle_for
from noncompact_kernels.schemas import RunConfig
from noncompact_kernels.spectral import KernelSpec


@pytest.fixture
def h2_basis(rng):
    return build_basis(KernelSpec(kappa=1.0), Space.parse("h2"), 500, "rejection", rng)


class TestDataset:
    def test_scalar_noise_broadcasts(self):
        space = Space.parse("h2")
        data = Dataset(points=[radial_point(space, r) for r in (0.1, 0.2)], y=[1.0, 2.0], noise=0.01)
        np.testing.assert_array_equal(data.noise, [0.01, 0.01])
        assert data.size == 2

    def test_rejects_mismatched_lengths(self):
        space = Space.parse("h2")
        with pytest.raises(DimensionMismatchError):
            Dataset(points=[space.base_point()], y=[1.0, 2.0], noise=0.1)
        with pytest.raises(DimensionMismatchError):
            Dataset(points=[space.base_point()], y=[1.0], noise=0.0)


class TestFactorize:
    def test_jitter_rescues_singular_system(self):
        K = np.ones((3, 3))
        factor = factorize(K, np.full(3, 1e-20))
        assert factor.jitter > 0.0

    def test_gives_up_on_indefinite_system(self):
        with pytest.raises(FactorizationError):
            factorize(np.diag([1.0, -1.0]), np.full(2, 1e-12))


class TestPosterior:
    def test_empty_dataset_is_prior(self, rng, h2_basis):
        query = random_points(h2_basis.space, 5, rng)
        moments = posterior_moments(h2_basis, Dataset.empty(), query)
        np.testing.assert_array_equal(moments.mean, np.zeros(5))
        np.testing.assert_allclose(moments.cov, kernel_matrix(h2_basis, query))

    def test_interpolates_at_small_noise(self, h2_basis):
        space = h2_basis.space
        points = [radial_point(space, r) for r in (0.3, 1.0, 2.0)]
        data = Dataset(points=points, y=[0.5, -1.0, 0.2], noise=1e-8)
        moments = posterior_moments(h2_basis, data, points)
        np.testing.assert_allclose(moments.mean, data.y, atol=1e-3)
        assert np.all(moments.std < 1e-2)

    def test_rejects_foreign_points(self, h2_basis):
        data = Dataset(points=[Space.parse("h3").base_point()], y=[0.0], noise=0.1)
        with pytest.raises(SpaceMismatchError):
            posterior_moments(h2_basis, data, [h2_basis.space.base_point()])

    def test_pathwise_samples_match_moments(self, rng, h2_basis):
        space = h2_basis.space
        data = Dataset(points=[radial_point(space, 0.5), space.base_point()], y=[1.0, 0.8], noise=0.05)
        query = [radial_point(space, r) for r in (0.25, 1.5)]
        moments = posterior_moments(h2_basis, data, query)
        samples = posterior_sample(h2_basis, data, query, rng, n_samples=4000)
        assert samples.shape == (2, 4000)
        np.testing.assert_allclose(samples.mean(axis=1), moments.mean, atol=5 * moments.std.max() / np.sqrt(4000))
        np.testing.assert_allclose(samples.std(axis=1), moments.std, rtol=0.08)

    def test_single_sample_shape(self, rng, h2_basis):
        query = [h2_basis.space.base_point()]
        assert posterior_sample(h2_basis, Dataset.empty(), query, rng).shape == (1,)


class TestOracleKernel:
    def test_observations_reduce_uncertainty(self):
        space = Space.parse("h3")
        spec = KernelSpec(kappa=1.0)
        kernel = OracleKernel(fn=oracle_for(space, spec), sigma2=2.0, kernel_space=space)
        x = radial_point(space, 0.4)
        data = Dataset(points=[x], y=[1.0], noise=0.01)
        moments = posterior_moments(kernel, data, [x, radial_point(space, 3.0)])
        assert moments.std[0] < 0.2
        assert moments.std[1] > moments.std[0]
        assert moments.std[1] <= np.sqrt(2.0)

    def test_log_marginal_likelihood(self, rng):
        space = Space.parse("h3")
        kernel = OracleKernel(fn=oracle_for(space, KernelSpec(kappa=1.0)), sigma2=1.0, kernel_space=space)
        points = random_points(space, 4, rng)
        y = rng.standard_normal(4)
        data = Dataset(points=points, y=y, noise=0.1)
        expected = stats.multivariate_normal(np.zeros(4), kernel.matrix(points) + 0.1 * np.eye(4)).logpdf(y)
        assert log_marginal_likelihood(kernel, data) == pytest.approx(expected, rel=1e-9)
        with pytest.raises(DimensionMismatchError):
            log_marginal_likelihood(kernel, Dataset.empty())


class TestPosteriorProperties:
    @pytest.fixture
    def ten_points(self, rng, h2_basis):
        points = random_points(h2_basis.space, 10, rng, radius=2.0)
        y = np.sin(np.arange(10.0))
        return Dataset(points=points, y=y, noise=0.05)

    def test_pathwise_moments_on_ten_points(self, rng, h2_basis, ten_points):
        query = random_points(h2_basis.space, 6, rng, radius=2.5)
        moments = posterior_moments(h2_basis, ten_points, query)
        n = 10_000
        samples = posterior_sample(h2_basis, ten_points, query, rng, n_samples=n)
        mean_tolerance = 5 * moments.std / np.sqrt(n) + 1e-9
        assert np.all(np.abs(samples.mean(axis=1) - moments.mean) <= mean_tolerance)
        variance = moments.std**2
        variance_tolerance = 5 * variance * np.sqrt(2.0 / (n - 1)) + 1e-9
        assert np.all(np.abs(samples.var(axis=1, ddof=1) - variance) <= variance_tolerance)

    def test_posterior_variance_below_prior(self, rng, h2_basis, ten_points):
        query = random_points(h2_basis.space, 8, rng, radius=3.0)
        moments = posterior_moments(h2_basis, ten_points, query)
        prior = np.diag(kernel_matrix(h2_basis, query))
        assert np.all(moments.std**2 <= prior + 1e-10)

    def test_training_order_does_not_matter(self, rng, h2_basis, ten_points):
        order = rng.permutation(ten_points.size)
        shuffled = Dataset(
            points=[ten_points.points[i] for i in order],
            y=ten_points.y[order],
            noise=ten_points.noise[order],
        )
        query = random_points(h2_basis.space, 5, rng)
        original = posterior_moments(h2_basis, ten_points, query)
        permuted = posterior_moments(h2_basis, shuffled, query)
        np.testing.assert_allclose(permuted.mean, original.mean, atol=1e-9)
        np.testing.assert_allclose(permuted.cov, original.cov, atol=1e-9)


class TestPriorPaths:
    def test_sample_prior_variance(self):
        config = RunConfig(
            space="h2",
            kernel=KernelSpec(kappa=1.0, sigma2=2.0),
            num_features=20,
            num_paths=2000,
            distances=[0.0, 1.0],
        )
        table = sample_prior(config)
        f = np.array([row[-1] for row in table.rows]).reshape(config.num_paths, 2)
        np.testing.assert_allclose(f.var(axis=0, ddof=1), 2.0, rtol=0.15)
        assert np.all(np.abs(f.mean(axis=0)) < 5 * np.sqrt(2.0 / config.num_paths))
