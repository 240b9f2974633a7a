"""Non-raising sanity checks run before experiment artifacts are written.

Each check returns (ok, issues) so callers can report every problem at once.
"""

import numpy as np

# Allowed negative eigenvalue mass of a Gram matrix, relative to its trace
PSD_TOL = 1e-8


def check_finite(name: str, values: np.ndarray) -> tuple[bool, list[str]]:
    """Check that every entry is finite.

    Args:
        name: Label used in the issue text
        values: Array to inspect

    Returns:
        Tuple of (is_finite, list_of_issues)
    """
    values = np.asarray(values)
    bad = int(np.sum(~np.isfinite(values)))
    if bad:
        return False, [f"{name}: {bad} non-finite entries"]
    return True, []


def check_psd(K: np.ndarray) -> tuple[bool, list[str]]:
    """Check symmetry and min eig(K) >= -PSD_TOL * tr(K)."""
    issues = []
    if K.shape[0] != K.shape[1]:
        return False, [f"Gram matrix is not square: {K.shape}"]
    if not np.array_equal(K, K.T):
        issues.append("Gram matrix is not exactly symmetric")
    min_eig = float(np.linalg.eigvalsh(0.5 * (K + K.T))[0]) if K.size else 0.0
    trace = float(np.trace(K))
    if min_eig < -PSD_TOL * max(trace, 0.0):
        issues.append(f"Gram matrix has eigenvalue {min_eig:.3e} below -{PSD_TOL:g} * trace ({trace:.3e})")
    return len(issues) == 0, issues


def check_acceptance(rate: float, stderr: float) -> tuple[bool, list[str]]:
    """Check that an acceptance estimate is a probability with a sane error."""
    issues = []
    if not 0.0 <= rate <= 1.0:
        issues.append(f"Acceptance rate {rate} outside [0, 1]")
    if not np.isfinite(stderr) or stderr < 0.0:
        issues.append(f"Acceptance standard error {stderr} is invalid")
    return len(issues) == 0, issues


def check_all(*results: tuple[bool, list[str]]) -> tuple[bool, list[str]]:
    """Combine several check results."""
    issues = [issue for _, found in results for issue in found]
    return all(ok for ok, _ in results), issues
