# External imports
import numpy as np

# Own imports
from common.exceptions import NoDescendingCrossing
from trajgeom.models import (
    INCHES_PER_FOOT,
    LinePath,
    QuadraticFit,
    ShotContext,
    ShotFactors,
    restrict_coefficients,
)


def rim_crossing(
    fit: QuadraticFit,
    path: LinePath,
    ctx: ShotContext,
    tangency_tol: float = 1e-6,
) -> tuple[np.ndarray, float]:
    """
    Locates where the fitted surface, restricted to the horizontal path,
    descends through the hoop height.
    :return: (crossing_xy in feet, dz/ds at the crossing)
    """
    return crossing_for_coefficients(fit.beta, path, ctx, tangency_tol)


def crossing_for_coefficients(
    beta: np.ndarray,
    path: LinePath,
    ctx: ShotContext,
    tangency_tol: float = 1e-6,
) -> tuple[np.ndarray, float]:
    """rim_crossing for a bare court-frame coefficient vector."""
    c0, c1, c2 = restrict_coefficients(beta, path.origin_xy, path.direction_xy)
    a, b, c = float(c2), float(c1), float(c0) - ctx.hoop_height

    if abs(a) < 1e-12:
        if b >= -tangency_tol:
            raise NoDescendingCrossing("linear height profile never descends through the rim")
        s = -c / b
        return path.point_at(s), float(b)

    discriminant = b * b - 4.0 * a * c
    if discriminant < 0:
        raise NoDescendingCrossing("height profile never reaches the rim plane")
    root = np.sqrt(discriminant)
    slope = -root
    if slope >= -tangency_tol:
        raise NoDescendingCrossing("height profile only grazes the rim plane")

    # Root where dz/ds = -sqrt(disc), written to avoid cancellation
    if b >= 0:
        s = -(b + root) / (2.0 * a)
    else:
        s = 2.0 * c / (root - b)
    return path.point_at(s), float(slope)


def compute_shot_factors(crossing_xy, dz_ds: float, ctx: ShotContext) -> ShotFactors:
    """
    Depth, left-right and entry angle from the shooter's perspective. Depth 0
    is the adjusted front of the rim, so the hoop centre sits at one rim radius.
    """
    if not dz_ds < 0:
        raise NoDescendingCrossing(f"ball is not descending at the crossing (dz/ds={dz_ds})")
    axis = ctx.shooter_axis
    shooter_right = np.array([axis[1], -axis[0]])
    offset = np.asarray(crossing_xy, dtype=float) - np.asarray(ctx.hoop_xy, dtype=float)

    return ShotFactors(
        depth=float(INCHES_PER_FOOT * (ctx.rim_radius + offset @ axis)),
        left_right=float(INCHES_PER_FOOT * (offset @ shooter_right)),
        entry_angle=float(np.degrees(np.arctan(-dz_ds))),
    )
