"""Points, distances, groups and decompositions for H_n and SPD(d)."""

from noncompact_kernels.manifolds.groups import (
    GroupElement,
    IwasawaData,
    RQResult,
    act,
    embed_isotropy,
    haar_orthogonal,
    haar_orthogonal_batch,
    horospherical,
    hyperbolic_abelian_coordinate,
    identity,
    isotropy_sampler,
    iwasawa,
    iwasawa_gl,
    iwasawa_so1n,
    point_to_group,
    random_isometry,
    relative_point,
    rotation_from_e1,
    rq_decompose,
    rq_log_diagonal,
)
from noncompact_kernels.manifolds.hyperbolic import (
    HyperbolicPoint,
    ball_distance_from_origin,
    ball_to_hyperboloid,
    boost,
    dist_hyperbolic,
    hyperbolic_base_point,
    hyperboloid_to_ball,
    minkowski_form,
    minkowski_gram,
)
from noncompact_kernels.manifolds.spaces import (
    ManifoldPoint,
    RhoData,
    Space,
    hyperbolic_rho,
    radial_point,
    random_points,
    space_of,
    spd_rho,
)
from noncompact_kernels.manifolds.spd import SpdPoint, dist_spd, spd_base_point, spd_from_log


def distance(x: ManifoldPoint, x_prime: ManifoldPoint) -> float:
    """Geodesic distance between two points of the same space."""
    space = space_of(x)
    space.check(x_prime)
    if isinstance(x, HyperbolicPoint):
        return dist_hyperbolic(x, x_prime)  # type: ignore[arg-type]
    return dist_spd(x, x_prime)  # type: ignore[arg-type]


__all__ = [
    # Points
    "HyperbolicPoint",
    "SpdPoint",
    "ManifoldPoint",
    "hyperbolic_base_point",
    "spd_base_point",
    "spd_from_log",
    "ball_to_hyperboloid",
    "hyperboloid_to_ball",
    "ball_distance_from_origin",
    # Geometry
    "minkowski_form",
    "minkowski_gram",
    "boost",
    "dist_hyperbolic",
    "dist_spd",
    "distance",
    # Spaces
    "Space",
    "RhoData",
    "hyperbolic_rho",
    "spd_rho",
    "space_of",
    "radial_point",
    "random_points",
    # Groups
    "GroupElement",
    "IwasawaData",
    "RQResult",
    "identity",
    "iwasawa",
    "iwasawa_so1n",
    "iwasawa_gl",
    "rq_decompose",
    "rq_log_diagonal",
    "hyperbolic_abelian_coordinate",
    "horospherical",
    "haar_orthogonal",
    "haar_orthogonal_batch",
    "isotropy_sampler",
    "embed_isotropy",
    "rotation_from_e1",
    "point_to_group",
    "act",
    "relative_point",
    "random_isometry",
]
