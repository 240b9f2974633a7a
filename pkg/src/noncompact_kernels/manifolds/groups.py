"""Group machinery: SO_0(1,n) and GL(d) elements, Iwasawa/RQ decompositions,
Haar sampling on the isotropy groups, and the group actions on points.

Decompositions are pure functions; group elements cache nothing.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import linalg

from noncompact_kernels.errors import (
    InvalidGroupElementError,
    InvalidPointError,
    SingularMatrixError,
    SpaceMismatchError,
)
from noncompact_kernels.manifolds.hyperbolic import (
    HyperbolicPoint,
    boost,
    minkowski_gram,
)
from noncompact_kernels.manifolds.spaces import ManifoldPoint, Space, space_of
from noncompact_kernels.manifolds.spd import SpdPoint
from noncompact_kernels.utils import GROUP_TOL


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Matrix representative in SO_0(1,n) (hyperbolic) or GL(d) (spd)."""

    space: Space
    M: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        M = np.array(self.M, dtype=float)
        size = self.space.degree + 1 if self.space.is_hyperbolic else self.space.degree
        if M.shape != (size, size):
            raise InvalidGroupElementError(f"Expected a {size}x{size} matrix for {self.space.name}, got {M.shape}")
        if not np.all(np.isfinite(M)):
            raise InvalidGroupElementError("Group element must be finite")
        if self.space.is_hyperbolic:
            _check_lorentz(M)
        elif np.linalg.det(M) == 0.0:
            raise InvalidGroupElementError("GL(d) element must be invertible")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """The product self * other."""
        if other.space != self.space:
            raise SpaceMismatchError(f"Cannot compose elements of {self.space.name} and {other.space.name}")
        return GroupElement(self.space, self.M @ other.M)

    def inverse(self) -> "GroupElement":
        if self.space.is_hyperbolic:
            gram = minkowski_gram(self.space.degree)
            return GroupElement(self.space, gram @ self.M.T @ gram)
        return GroupElement(self.space, np.linalg.inv(self.M))

    def __repr__(self) -> str:
        return f"GroupElement({self.space.name}, M={np.array2string(self.M, precision=4)})"


def _check_lorentz(M: np.ndarray) -> None:
    gram = minkowski_gram(M.shape[0] - 1)
    scale = max(1.0, float(np.max(np.abs(M))) ** 2)
    if np.max(np.abs(M.T @ gram @ M - gram)) > GROUP_TOL * scale:
        raise InvalidGroupElementError("Matrix does not preserve the Minkowski form")
    if abs(np.linalg.det(M) - 1.0) > GROUP_TOL * scale:
        raise InvalidGroupElementError("Matrix does not have unit determinant")
    if M[0, 0] <= 0.0:
        raise InvalidGroupElementError("Matrix does not preserve the forward sheet")


def identity(space: Space) -> GroupElement:
    size = space.degree + 1 if space.is_hyperbolic else space.degree
    return GroupElement(space, np.eye(size))


# =============================================================================
# DECOMPOSITIONS
# =============================================================================


class RQResult(NamedTuple):
    """M = R Q with R upper triangular, positive diagonal u, Q orthogonal."""

    R: np.ndarray
    Q: np.ndarray
    u: np.ndarray
    log_u: np.ndarray


@dataclass(frozen=True, eq=False)
class IwasawaData:
    """Iwasawa factors with M = N A H.

    For H_n, ``coordinates`` holds the single boost parameter t with A = A_t.
    For SPD(d), it holds log u with u the diagonal of the R factor of the RQ
    decomposition, and N A = R.
    """

    coordinates: np.ndarray
    N_part: np.ndarray = field(repr=False)
    A_part: np.ndarray = field(repr=False)
    H_part: np.ndarray = field(repr=False)

    @property
    def t(self) -> float:
        return float(self.coordinates[0])

    def reconstruct(self) -> np.ndarray:
        return self.N_part @ self.A_part @ self.H_part


def rq_decompose(M: np.ndarray) -> RQResult:
    """RQ decomposition with the diagonal of R made positive.

    Args:
        M: Invertible square matrix.

    Returns:
        RQResult with M = R Q.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SingularMatrixError(f"RQ decomposition needs a square matrix, got shape {M.shape}")
    R, Q = linalg.rq(M)
    diag = np.diag(R)
    if np.min(np.abs(diag)) <= np.finfo(float).eps * M.shape[0] * max(np.max(np.abs(diag)), 1e-300):
        raise SingularMatrixError("Matrix is singular")
    signs = np.sign(diag)
    R = R * signs
    Q = signs[:, None] * Q
    u = np.diag(R).copy()
    return RQResult(R=R, Q=Q, u=u, log_u=np.log(u))


def rq_log_diagonal(M: np.ndarray) -> np.ndarray:
    """log of the R-diagonal of the RQ decomposition, batched over leading axes.

    Reversing row and column order of M^T turns the RQ problem into a QR
    problem: if J M^T J = Q' R', then |diag R| is diag R' reversed.
    """
    flipped = np.swapaxes(M, -1, -2)[..., ::-1, ::-1]
    _, r = np.linalg.qr(flipped)
    diag = np.abs(np.diagonal(r, axis1=-2, axis2=-1))[..., ::-1]
    return np.log(diag)


def horospherical(y: np.ndarray) -> np.ndarray:
    """The unipotent N_y in SO_0(1,n) fixing the null vector xi = e_0 - e_1.

    N_y e_0 = e_0 + y + |y|^2/2 xi, N_y e_1 = e_1 + y + |y|^2/2 xi and
    N_y e_j = e_j + y_j xi for j >= 2, with y in span(e_2, ..., e_n).
    N_y preserves the functional v_0 + v_1 and N_y N_{-y} = I. In the
    light-cone basis (xi, e_2, ..., e_n, e_0 + e_1) it is upper unitriangular.

    Args:
        y: Translation vector of length n - 1.
    """
    y = np.asarray(y, dtype=float)
    n = y.size + 1
    xi = np.zeros(n + 1)
    xi[:2] = [1.0, -1.0]
    light = np.zeros(n + 1)
    light[:2] = 1.0
    Y = np.zeros(n + 1)
    Y[2:] = y
    return np.eye(n + 1) + np.outer(Y + 0.5 * float(y @ y) * xi, light) + np.outer(xi, Y)


def iwasawa_so1n(g: GroupElement) -> IwasawaData:
    """Iwasawa decomposition M = N(M) A(M) H(M) of an element of SO_0(1,n).

    With v = M x_0: t = log(v_0 + v_1), A = A_t, N = N_y with
    y = e^{-t} v_{2:} so that N A x_0 = v, and H = A^{-1} N^{-1} M, which
    fixes x_0 and so lies in diag(1, SO(n)).
    """
    if not g.space.is_hyperbolic:
        raise SpaceMismatchError("iwasawa_so1n needs an element of SO_0(1,n)")
    n = g.space.degree
    v = g.M[:, 0]
    t = float(np.log(v[0] + v[1]))
    y = np.exp(-t) * v[2:]
    N = horospherical(y)
    A = boost(n, t)
    H = boost(n, -t) @ horospherical(-y) @ g.M
    return IwasawaData(coordinates=np.array([t]), N_part=N, A_part=A, H_part=H)


def iwasawa_gl(g: GroupElement) -> IwasawaData:
    """RQ-based decomposition of an element of GL(d), M = N A H."""
    if g.space.is_hyperbolic:
        raise SpaceMismatchError("iwasawa_gl needs an element of GL(d)")
    rq = rq_decompose(g.M)
    return IwasawaData(
        coordinates=rq.log_u,
        N_part=rq.R / rq.u,
        A_part=np.diag(rq.u),
        H_part=rq.Q,
    )


def iwasawa(g: GroupElement) -> IwasawaData:
    return iwasawa_so1n(g) if g.space.is_hyperbolic else iwasawa_gl(g)


def hyperbolic_abelian_coordinate(v: np.ndarray, first_rows: np.ndarray) -> np.ndarray:
    """Iwasawa boost parameter t(h g) for a point v = g x_0, batched.

    The unipotent factor preserves the functional v_0 + v_1 and
    (A_t x_0)_0 + (A_t x_0)_1 = e^t, so t(h g) = log(v_0 + <h_row0, v_{1:}>).

    Args:
        v: Hyperboloid coordinates, shape (..., n+1).
        first_rows: First rows of the isotropy rotations, shape (L, n).

    Returns:
        Array of shape (..., L).
    """
    v = np.asarray(v, dtype=float)
    return np.log(v[..., :1] + v[..., 1:] @ first_rows.T)


# =============================================================================
# HAAR SAMPLING
# =============================================================================


def haar_orthogonal_batch(
    n: int,
    size: int,
    rng: np.random.Generator,
    special: bool = True,
) -> np.ndarray:
    """Haar-distributed orthogonal matrices, shape (size, n, n).

    QR of standard Gaussian matrices with the sign-of-diagonal correction;
    for SO(n) the first column is flipped whenever the determinant is -1.
    """
    X = rng.standard_normal((size, n, n))
    Q, R = np.linalg.qr(X)
    signs = np.sign(np.diagonal(R, axis1=-2, axis2=-1))
    signs[signs == 0.0] = 1.0
    Q = Q * signs[:, None, :]
    if special:
        det = np.linalg.det(Q)
        Q[det < 0.0, :, 0] *= -1.0
    return Q


def haar_orthogonal(n: int, rng: np.random.Generator, special: bool = True) -> np.ndarray:
    """A single Haar-distributed element of SO(n) (special) or O(n)."""
    return haar_orthogonal_batch(n, 1, rng, special=special)[0]


def embed_isotropy(h: np.ndarray) -> np.ndarray:
    """Embed h in SO(n) block-diagonally into SO_0(1,n) as diag(1, h)."""
    n = h.shape[-1]
    M = np.eye(n + 1)
    M[1:, 1:] = h
    return M


def isotropy_sampler(space: Space, size: int, rng: np.random.Generator) -> np.ndarray:
    """Haar samples of the isotropy group: SO(n) for H_n, O(d) for SPD(d)."""
    return haar_orthogonal_batch(space.isotropy_size, size, rng, special=space.is_hyperbolic)


# =============================================================================
# ACTIONS
# =============================================================================


def _rotation_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rotation in the plane of unit vectors a, b mapping a to b (needs a.b > -1)."""
    c = float(a @ b)
    K = np.outer(b, a) - np.outer(a, b)
    return np.eye(a.size) + K + (K @ K) / (1.0 + c)


def rotation_from_e1(u: np.ndarray) -> np.ndarray:
    """An element of SO(n) sending e_1 to the unit vector u."""
    n = u.size
    e1 = np.zeros(n)
    e1[0] = 1.0
    if u[0] >= 0.0:
        return _rotation_between(e1, u)
    # rotate e_1 to -e_1 by a half turn in the (e_1, e_2) plane, then on to u
    half_turn = np.eye(n)
    half_turn[0, 0] = half_turn[1, 1] = -1.0
    return _rotation_between(-e1, u) @ half_turn


def point_to_group(x: ManifoldPoint) -> GroupElement:
    """A group element g with g . x_0 = x.

    H_n: writing x = (cosh r, sinh r u), returns Rot(e_1 -> u) A_r.
    SPD(d): returns the lower-triangular Cholesky factor C of x.
    """
    space = space_of(x)
    if isinstance(x, HyperbolicPoint):
        r = float(np.arccosh(max(x.v[0], 1.0)))
        if np.sinh(r) < 1e-12:
            return identity(space)
        u = x.v[1:] / np.linalg.norm(x.v[1:])
        return GroupElement(space, embed_isotropy(rotation_from_e1(u)) @ boost(x.n, r))
    try:
        return GroupElement(space, np.linalg.cholesky(x.S))
    except np.linalg.LinAlgError as e:
        raise InvalidPointError(f"Cholesky factorization failed: {e}") from e


def act(g: GroupElement, x: ManifoldPoint) -> ManifoldPoint:
    """Group action: M v on H_n, M S M^T on SPD(d)."""
    g.space.check(x)
    if isinstance(x, HyperbolicPoint):
        return HyperbolicPoint(g.M @ x.v)
    S = g.M @ x.S @ g.M.T
    return SpdPoint(0.5 * (S + S.T))


def relative_point(x: ManifoldPoint, x_ref: ManifoldPoint) -> ManifoldPoint:
    """The point g_ref^{-1} . x, where g_ref = point_to_group(x_ref).

    Stationary quantities k(x, x_ref) depend only on this point.
    """
    return act(point_to_group(x_ref).inverse(), x)


def random_isometry(space: Space, rng: np.random.Generator) -> GroupElement:
    """A random isometry.

    H_n: diag(1, h) A_t with h Haar on SO(n) and t ~ Uniform(0, 2).
    SPD(d): Gaussian A conditioned on |det A| > 1e-6, acting by S -> A S A^T.
    """
    if space.is_hyperbolic:
        h = haar_orthogonal(space.degree, rng)
        t = rng.uniform(0.0, 2.0)
        return GroupElement(space, embed_isotropy(h) @ boost(space.degree, t))
    while True:
        A = rng.standard_normal((space.degree, space.degree))
        if abs(np.linalg.det(A)) > 1e-6:
            return GroupElement(space, A)
