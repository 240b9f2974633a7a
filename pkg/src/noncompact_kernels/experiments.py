"""Experiment steps behind the CLI commands.

Each step reads a RunConfig, runs with seeded per-component random streams,
reports progress on the console and returns an ExperimentTable that the CLI
writes as CSV.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.panel import Panel

from noncompact_kernels.checks import check_acceptance, check_all, check_finite, check_psd
from noncompact_kernels.errors import UnsupportedError
from noncompact_kernels.features import (
    FeatureBasis,
    build_basis,
    kernel_estimate,
    kernel_matrix,
    limiting_kernel,
    prior_sample,
)
from noncompact_kernels.gp import Dataset, posterior_moments, posterior_sample
from noncompact_kernels.manifolds import ManifoldPoint, Space, distance, radial_point, random_points
from noncompact_kernels.oracles import has_oracle, oracle_for
from noncompact_kernels.schemas import RunConfig, decode_point, load_dataset, point_columns, point_to_row
from noncompact_kernels.spectral import acceptance_rate, spectral_sample
from noncompact_kernels.utils import log_run_step, make_rng

console = Console(stderr=True)

Cell = float | int | str


@dataclass
class ExperimentTable:
    """CSV body of a command: header, rows, trailing comment lines and check issues."""

    columns: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    footer: dict[str, Cell] = field(default_factory=dict)
    issues: list[str] = field(default_factory=list)


def evaluation_points(config: RunConfig, space: Space) -> list[ManifoldPoint]:
    """Explicit points if given, else the radial grid, plus optional random points."""
    if config.points is not None:
        points = [decode_point(space, value) for value in config.points]
    else:
        points = [radial_point(space, r) for r in config.distances]
    if config.num_random_points:
        points += random_points(space, config.num_random_points, make_rng(config.seed, "points"), config.random_radius)
    return points


def make_basis(config: RunConfig, replicate: int = 0, num_features: int | None = None) -> FeatureBasis:
    """Basis drawn from the (seed, "basis", replicate) stream."""
    return build_basis(
        config.kernel,
        config.space_descriptor,
        num_features or config.num_features,
        config.method,
        make_rng(config.seed, "basis", replicate),
        provenance={"seed": config.seed, "stream": "basis", "replicate": replicate},
    )


def kernel_eval(config: RunConfig) -> ExperimentTable:
    """k(x, x_0) between each evaluation point and the base point."""
    space = config.space_descriptor
    console.print(Panel(f"📐 Evaluating {config.kernel.label()} on {space.name}", style="cyan"))

    base = space.base_point()
    points = evaluation_points(config, space)
    estimates = np.empty((config.num_bases, len(points)))
    stderrs = np.empty((config.num_bases, len(points)))
    issues: list[str] = []
    for b in range(config.num_bases):
        basis = make_basis(config, b)
        for i, x in enumerate(points):
            estimate = kernel_estimate(basis, x, base, config.estimator)
            estimates[b, i] = float(estimate.value)
            stderrs[b, i] = estimate.stderr
        if b == 0 and config.estimator == "psd":
            _, psd_issues = check_psd(kernel_matrix(basis, points))
            issues += psd_issues

    if config.num_bases == 1:
        k_hat, stderr = estimates[0], stderrs[0]
    else:
        k_hat = estimates.mean(axis=0)
        stderr = estimates.std(axis=0, ddof=1) / np.sqrt(config.num_bases)

    columns = point_columns(space) + ["distance", "k_hat", "stderr"]
    oracle_values = None
    if has_oracle(space):
        oracle = oracle_for(space, config.kernel)
        oracle_values = [config.kernel.sigma2 * oracle(x, base) for x in points]
        columns.append("oracle")

    rows: list[list[Cell]] = []
    for i, x in enumerate(points):
        row: list[Cell] = [*point_to_row(x), distance(x, base), float(k_hat[i]), float(stderr[i])]
        if oracle_values is not None:
            row.append(oracle_values[i])
        rows.append(row)

    _, finite_issues = check_finite("k_hat", k_hat)
    issues += finite_issues
    console.print(f"✅ {len(points)} points, {config.num_bases} basis draw(s) of L={config.num_features}")
    log_run_step("kernel_eval", {"space": space.name, "points": len(points), "issues": issues})
    return ExperimentTable(columns=columns, rows=rows, issues=issues)


def sample_prior(config: RunConfig) -> ExperimentTable:
    """One prior path per basis replicate at every evaluation point."""
    space = config.space_descriptor
    console.print(Panel(f"🎲 Sampling {config.num_paths} prior path(s) on {space.name}", style="blue"))

    points = evaluation_points(config, space)
    rows: list[list[Cell]] = []
    issues: list[str] = []
    for p in range(config.num_paths):
        values = prior_sample(make_basis(config, p), points)
        issues += check_finite(f"path {p}", values)[1]
        rows += [[*point_to_row(x), p, float(f)] for x, f in zip(points, values, strict=True)]

    log_run_step("sample_prior", {"space": space.name, "paths": config.num_paths, "points": len(points)})
    return ExperimentTable(columns=point_columns(space) + ["path", "f"], rows=rows, issues=issues)


def gp_posterior(config: RunConfig) -> ExperimentTable:
    """Posterior mean, standard deviation and optional pathwise samples."""
    space = config.space_descriptor
    data = load_dataset(Path(config.dataset), space) if config.dataset else Dataset.empty()
    console.print(Panel(f"📈 Conditioning on {data.size} observation(s) on {space.name}", style="green"))

    points = evaluation_points(config, space)
    basis = make_basis(config)
    moments = posterior_moments(basis, data, points)
    columns = point_columns(space) + ["mean", "std"]
    samples = None
    if config.posterior_samples:
        samples = posterior_sample(basis, data, points, make_rng(config.seed, "noise"), n_samples=config.posterior_samples)
        columns += [f"sample_{s}" for s in range(config.posterior_samples)]

    rows: list[list[Cell]] = []
    for i, x in enumerate(points):
        row: list[Cell] = [*point_to_row(x), float(moments.mean[i]), float(moments.std[i])]
        if samples is not None:
            row += [float(value) for value in samples[i]]
        rows.append(row)

    ok, issues = check_all(check_finite("mean", moments.mean), check_finite("cov", moments.cov))
    log_run_step("gp_posterior", {"space": space.name, "observations": data.size, "ok": ok})
    return ExperimentTable(columns=columns, rows=rows, issues=issues)


def reference_value(config: RunConfig, x: ManifoldPoint, base: ManifoldPoint) -> float:
    """Oracle kernel value if one exists, else a large-L estimate from the reference stream."""
    space = config.space_descriptor
    try:
        return config.kernel.sigma2 * oracle_for(space, config.kernel)(x, base)
    except UnsupportedError:
        basis = build_basis(
            config.kernel,
            space,
            config.reference_features,
            config.method,
            make_rng(config.seed, "reference"),
        )
        return float(kernel_estimate(basis, x, base, config.estimator).value)


def error_curve(config: RunConfig) -> ExperimentTable:
    """Relative error of the estimate at one pair as the number of features grows."""
    space = config.space_descriptor
    console.print(Panel(f"📉 Error curve on {space.name} over L = {config.feature_counts}", style="magenta"))

    base = space.base_point()
    x = radial_point(space, config.reference_distance)
    reference = reference_value(config, x, base)
    rows: list[list[Cell]] = []
    medians = []
    for i, count in enumerate(config.feature_counts):
        errors = np.empty(config.num_seeds)
        for r in range(config.num_seeds):
            basis = make_basis(config, i * config.num_seeds + r, num_features=count)
            errors[r] = abs(float(kernel_estimate(basis, x, base, config.estimator).value) - reference) / abs(reference)
        q05, q25, q50, q75, q95 = np.quantile(errors, [0.05, 0.25, 0.5, 0.75, 0.95])
        medians.append(q50)
        rows.append([count, q50, float(errors.mean()), q05, q25, q75, q95])
        console.print(f"  → L={count}: median relative error {q50:.3e}")

    footer: dict[str, Cell] = {}
    if len(config.feature_counts) > 1 and all(m > 0 for m in medians):
        slope = np.polyfit(np.log(config.feature_counts), np.log(medians), 1)[0]
        footer["slope"] = float(slope)
        console.print(f"✅ Log-log slope {slope:.3f}")

    log_run_step("error_curve", {"space": space.name, "reference": reference, **footer})
    return ExperimentTable(
        columns=["L", "relative_error", "mean", "q05", "q25", "q75", "q95"],
        rows=rows,
        footer=footer,
        issues=check_finite("relative_error", np.array(medians))[1],
    )


def accept_rate(config: RunConfig) -> ExperimentTable:
    """Rejection-sampler acceptance probability across length scales."""
    space = config.space_descriptor
    console.print(Panel(f"🎯 Acceptance rates on {space.name}", style="yellow"))

    rows: list[list[Cell]] = []
    issues: list[str] = []
    for i, kappa in enumerate(config.kappas):
        spec = config.kernel.model_copy(update={"kappa": kappa})
        estimate = acceptance_rate(spec, space, config.trials, make_rng(config.seed, "sampler", i))
        issues += check_acceptance(estimate.rate, estimate.stderr)[1]
        rows.append([kappa, estimate.rate, estimate.stderr])
        console.print(f"  → kappa={kappa:g}: {estimate.rate:.4f} ± {estimate.stderr:.4f}")

    log_run_step("accept_rate", {"space": space.name, "rates": [row[1] for row in rows]})
    return ExperimentTable(columns=["kappa", "rate", "stderr"], rows=rows, issues=issues)


def range_curve(config: RunConfig) -> ExperimentTable:
    """Normalized kernel at a fixed pair versus length scale, against the limiting kernel."""
    space = config.space_descriptor
    console.print(Panel(f"🔭 Length-scale sweep on {space.name}", style="cyan"))

    base = space.base_point()
    x = radial_point(space, config.reference_distance)
    limit = limiting_kernel(x, base, config.limiting_features, make_rng(config.seed, "zonal"))
    rows: list[list[Cell]] = []
    for i, kappa in enumerate(config.kappas):
        spec = config.kernel.model_copy(update={"kappa": kappa})
        basis = build_basis(spec, space, config.num_features, config.method, make_rng(config.seed, "basis", i))
        estimate = kernel_estimate(basis, x, base, config.estimator)
        rows.append([kappa, float(estimate.value) / spec.sigma2, estimate.stderr / spec.sigma2, float(limit.value), limit.stderr])

    log_run_step("range_curve", {"space": space.name, "limiting": float(limit.value)})
    return ExperimentTable(
        columns=["kappa", "k_hat", "stderr", "limiting", "limiting_stderr"],
        rows=rows,
        issues=check_finite("k_hat", np.array([row[1] for row in rows], dtype=float))[1],
    )


def spectral_samples(config: RunConfig) -> ExperimentTable:
    """Raw draws from the exact spectral sampler."""
    space = config.space_descriptor
    console.print(Panel(f"🌈 Drawing {config.spectral_samples} spectral samples on {space.name}", style="blue"))

    result = spectral_sample(config.kernel, space, config.spectral_samples, make_rng(config.seed, "sampler"))
    samples = np.asarray(result.samples).reshape(config.spectral_samples, space.rank)
    footer: dict[str, Cell] = {"accepted": result.accepted, "proposed": result.proposed}
    log_run_step("spectral_sample", {"space": space.name, **footer})
    return ExperimentTable(
        columns=[f"lambda_{j}" for j in range(space.rank)],
        rows=[[float(value) for value in row] for row in samples],
        footer=footer,
        issues=check_finite("lambda", samples)[1],
    )


COMMANDS: dict[str, Callable[[RunConfig], ExperimentTable]] = {
    "kernel-eval": kernel_eval,
    "sample-prior": sample_prior,
    "gp-posterior": gp_posterior,
    "error-curve": error_curve,
    "accept-rate": accept_rate,
    "range-curve": range_curve,
    "spectral-sample": spectral_samples,
}
