"""Exact rejection samplers for the normalized spectral measures.

Proposals come from the mixture (H_n) or scaled GOE (SPD(d)) samplers, which
match the target up to a tanh factor in (0, 1]; that factor is the acceptance
probability. Loops run in batches over the outstanding draws.
"""

import logging
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from noncompact_kernels.errors import SamplerError
from noncompact_kernels.manifolds.spaces import Space
from noncompact_kernels.spectral.c_functions import hyp_polynomial_coeffs, tanh_product
from noncompact_kernels.spectral.kernel_spec import KernelSpec
from noncompact_kernels.spectral.samplers import (
    matern_gamma,
    sample_chi,
    sample_goe_eigs,
    sample_hyp_heat_mixture,
    sample_hyp_matern_mixture,
)
from noncompact_kernels.utils import REJECTION_MAX_ITERATIONS

logger = logging.getLogger(__name__)

Proposal = Callable[[int, np.random.Generator], tuple[np.ndarray, np.ndarray]]


class RejectionResult(NamedTuple):
    """Accepted draws plus the number of proposals it took to get them."""

    samples: np.ndarray
    accepted: int
    proposed: int

    @property
    def rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 1.0


class AcceptanceEstimate(NamedTuple):
    rate: float
    stderr: float
    trials: int


# =============================================================================
# PROPOSALS
# =============================================================================


def propose_hyp(spec: KernelSpec, n: int, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Mixture draws lambda >= 0 on H_n with their acceptance probabilities.

    Odd n needs no rejection; even n accepts with probability tanh(pi lambda).
    """
    coeffs = hyp_polynomial_coeffs(n)
    if spec.is_heat:
        lam = np.asarray(sample_hyp_heat_mixture(coeffs, spec.kappa, rng, size=size))
    else:
        lam = np.asarray(
            sample_hyp_matern_mixture(coeffs, spec.nu, spec.kappa, n, rng, size=size, shifted=spec.is_shifted)
        )
    accept_prob = np.tanh(np.pi * lam) if n % 2 == 0 else np.ones_like(lam)
    return lam, accept_prob


def propose_spd(spec: KernelSpec, d: int, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Scaled GOE draws on SPD(d) with acceptance probabilities prod tanh(pi|l_i - l_j|).

    Heat: lambda = l_GOE / kappa. Matérn: lambda = (l_GOE / gamma) / y with
    gamma = (2 nu/kappa^2 + ||rho||^2)^{-1/2} (||rho||^2 dropped when shifted)
    and y ~ chi_{2 nu}.
    """
    goe = np.asarray(sample_goe_eigs(d, rng, size=size))
    if spec.is_heat:
        lam = goe / spec.kappa
    else:
        rho_norm_sq = (d**3 - d) / 12
        gamma = matern_gamma(spec.nu, spec.kappa, rho_norm_sq, spec.is_shifted) ** -0.5
        y = sample_chi(2 * spec.nu, rng, size)
        lam = goe / gamma / y[:, None]
    return lam, tanh_product(lam)


def proposal_for(spec: KernelSpec, space: Space) -> Proposal:
    if space.is_hyperbolic:
        return lambda size, rng: propose_hyp(spec, space.degree, size, rng)
    return lambda size, rng: propose_spd(spec, space.degree, size, rng)


def _rejection_loop(propose: Proposal, size: int, rng: np.random.Generator) -> RejectionResult:
    accepted_batches: list[np.ndarray] = []
    accepted = 0
    proposed = 0
    cap = REJECTION_MAX_ITERATIONS * size
    while accepted < size:
        if proposed >= cap:
            raise SamplerError(
                f"Rejection sampler exceeded {cap} proposals with {accepted}/{size} accepted"
            )
        k = size - accepted
        lam, accept_prob = propose(k, rng)
        keep = rng.uniform(size=k) < accept_prob
        proposed += k
        if np.any(keep):
            accepted_batches.append(lam[keep])
            accepted += int(np.sum(keep))
    logger.debug("Rejection sampler accepted %d of %d proposals", size, proposed)
    return RejectionResult(samples=np.concatenate(accepted_batches)[:size], accepted=size, proposed=proposed)


# =============================================================================
# SAMPLERS
# =============================================================================


def rejection_sample_hyp(
    spec: KernelSpec,
    n: int,
    rng: np.random.Generator,
    size: int | None = None,
) -> RejectionResult:
    """Exact draws from the normalized spectral measure of H_n.

    The mixture draw is accepted with probability tanh(pi lambda) when n is
    even, then given a uniform random sign.
    """
    count = 1 if size is None else size
    result = _rejection_loop(lambda k, g: propose_hyp(spec, n, k, g), count, rng)
    signs = rng.choice(np.array([-1.0, 1.0]), size=count)
    samples = result.samples * signs
    return result._replace(samples=samples[0] if size is None else samples)


def rejection_sample_spd(
    spec: KernelSpec,
    d: int,
    rng: np.random.Generator,
    size: int | None = None,
) -> RejectionResult:
    """Exact draws from the normalized spectral measure of SPD(d).

    Accepted vectors are returned in uniformly random coordinate order, the
    target being symmetric under permutations.
    """
    count = 1 if size is None else size
    result = _rejection_loop(lambda k, g: propose_spd(spec, d, k, g), count, rng)
    samples = rng.permuted(result.samples, axis=1)
    return result._replace(samples=samples[0] if size is None else samples)


def spectral_sample(spec: KernelSpec, space: Space, size: int, rng: np.random.Generator) -> RejectionResult:
    """Dispatch to the rejection sampler of the space; samples have shape (size,) or (size, d)."""
    if space.is_hyperbolic:
        return rejection_sample_hyp(spec, space.degree, rng, size=size)
    return rejection_sample_spd(spec, space.degree, rng, size=size)


def acceptance_rate(spec: KernelSpec, space: Space, trials: int, rng: np.random.Generator) -> AcceptanceEstimate:
    """Monte-Carlo acceptance probability of the rejection sampler.

    Draws ``trials`` proposals and their Bernoulli accept indicators; the
    standard error is the binomial sqrt(p(1-p)/trials).
    """
    if trials < 1:
        raise SamplerError(f"trials must be >= 1, got {trials}")
    _, accept_prob = proposal_for(spec, space)(trials, rng)
    indicators = rng.uniform(size=trials) < accept_prob
    rate = float(np.mean(indicators))
    stderr = float(np.sqrt(rate * (1.0 - rate) / trials))
    logger.debug("Acceptance rate %.4f +/- %.4f for %s on %s", rate, stderr, spec.label(), space.name)
    return AcceptanceEstimate(rate=rate, stderr=stderr, trials=trials)
