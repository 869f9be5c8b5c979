"""
Bayesian shot measurement for many shots at once. The two conjugate updates,
the horizontal line fit, the rim crossing and the shot factors run as stacked
array operations over fixed-size chunks of shots; every shot that needs a
special case (too few samples, static ball, no clean descending crossing,
large residuals) goes through measure_shot instead, so the outcome matches
the per-shot path.
"""

# Built-in imports
from typing import Literal, Optional, Sequence

# External imports
import numpy as np

# Own imports
from common.config import BayesCfg, ValidityCfg
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from trajgeom.fitting import PSEUDO_POINTS_PER_END, SampleInput, as_sample_array
from trajgeom.models import (
    INCHES_PER_FOOT,
    N_COEFFICIENTS,
    LinePath,
    QuadraticFit,
    ShotContext,
    ShotFactors,
    ShotMeasurement,
    design_row,
    restrict_coefficients,
)
from trajgeom.validity import measure_shot


logger = custom_logger()

# Chunk boundaries never depend on the worker count
CHUNK_SHOTS = 2048


def measure_shots(
    samples: Sequence[SampleInput],
    contexts: Sequence[ShotContext],
    outcomes: Sequence[int],
    method: Literal["bayes", "ols"] = "bayes",
    bayes_cfg: Optional[BayesCfg] = None,
    validity_cfg: Optional[ValidityCfg] = None,
    jobs: int = 1,
) -> list[ShotMeasurement]:
    """
    measure_shot over a list of shots, results in input order.
    :param samples (Sequence): tracking samples of every shot.
    :param contexts (Sequence[ShotContext]): release and hoop of every shot.
    :param outcomes (Sequence[int]): 0/1 outcome of every shot.
    :param jobs (int): worker threads.
    """
    if not len(samples) == len(contexts) == len(outcomes):
        raise ValueError("samples, contexts and outcomes must have equal lengths")
    bayes_cfg = bayes_cfg or BayesCfg()
    validity_cfg = validity_cfg or ValidityCfg()

    if method == "ols":
        return ordered_map(
            lambda i: measure_shot(
                samples[i], contexts[i], outcomes[i], "ols", bayes_cfg, validity_cfg
            ),
            range(len(samples)),
            jobs,
        )

    chunks = [
        range(start, min(start + CHUNK_SHOTS, len(samples)))
        for start in range(0, len(samples), CHUNK_SHOTS)
    ]
    measured = ordered_map(
        lambda chunk: _measure_chunk(
            [as_sample_array(samples[i]) for i in chunk],
            [contexts[i] for i in chunk],
            [outcomes[i] for i in chunk],
            bayes_cfg,
            validity_cfg,
        ),
        chunks,
        jobs,
    )
    return [m for chunk in measured for m in chunk]


def _measure_chunk(
    data: list[np.ndarray],
    contexts: list[ShotContext],
    outcomes: list[int],
    bayes_cfg: BayesCfg,
    validity_cfg: ValidityCfg,
) -> list[ShotMeasurement]:
    counts = np.array([d.shape[0] for d in data], dtype=int)
    hoop = np.array([c.hoop_xy for c in contexts], dtype=float).reshape(-1, 2)
    release = np.array([c.release_xy for c in contexts], dtype=float).reshape(-1, 2)
    distance = np.hypot(*(hoop - release).T)
    regular = np.flatnonzero(
        (distance >= validity_cfg.min_path_length)
        & (counts >= max(validity_cfg.min_samples, 2))
    )

    results: list[Optional[ShotMeasurement]] = [None] * len(data)
    if regular.size:
        batch = _measure_regular(
            [data[i] for i in regular], [contexts[i] for i in regular], bayes_cfg, validity_cfg
        )
        for index, measurement in zip(regular, batch):
            results[index] = measurement

    fallback = [i for i, m in enumerate(results) if m is None]
    if fallback:
        logger.debug(f"{len(fallback)} of {len(data)} shots measured one at a time")
    for i in fallback:
        results[i] = measure_shot(
            data[i], contexts[i], outcomes[i], "bayes", bayes_cfg, validity_cfg
        )
    return results


def _shift_matrices(dx: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """Stack of shift_matrix(dx[k], dy[k])."""
    shift = np.tile(np.eye(N_COEFFICIENTS), (dx.size, 1, 1))
    shift[:, 0, 1], shift[:, 0, 2] = -dx, -dy
    shift[:, 0, 3], shift[:, 0, 4], shift[:, 0, 5] = dx * dx, dy * dy, dx * dy
    shift[:, 1, 3], shift[:, 1, 5] = -2.0 * dx, -dy
    shift[:, 2, 4], shift[:, 2, 5] = -2.0 * dy, -dx
    return shift


def _symmetric(matrices: np.ndarray) -> np.ndarray:
    return 0.5 * (matrices + np.swapaxes(matrices, -1, -2))


def _measure_regular(
    data: list[np.ndarray],
    contexts: list[ShotContext],
    cfg: BayesCfg,
    validity_cfg: ValidityCfg,
) -> list[Optional[ShotMeasurement]]:
    """Measurements of shots with enough samples; None where a special case applies."""
    k = len(data)
    counts = np.array([d.shape[0] for d in data], dtype=int)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    seg = np.repeat(np.arange(k), counts)
    stacked = np.concatenate(data)
    t, x, y, z = stacked.T

    hoop = np.array([c.hoop_xy for c in contexts], dtype=float)
    release = np.array([c.release_xy for c in contexts], dtype=float)
    hoop_height = np.array([c.hoop_height for c in contexts], dtype=float)
    rim_radius = np.array([c.rim_radius for c in contexts], dtype=float)

    # Update 1: pseudo-points at release and hoop, in the hoop-centred frame
    eye = np.eye(N_COEFFICIENTS)
    mean0 = np.asarray(cfg.prior_mean, dtype=float)
    precision0 = cfg.prior_precision * eye
    ends = PSEUDO_POINTS_PER_END
    pseudo_x = np.concatenate([np.repeat((release - hoop)[:, :1], ends, 1), np.zeros((k, ends))], 1)
    pseudo_y = np.concatenate([np.repeat((release - hoop)[:, 1:], ends, 1), np.zeros((k, ends))], 1)
    pseudo_z = np.concatenate(
        [np.full((k, ends), cfg.release_height), np.repeat(hoop_height[:, None], ends, 1)], 1
    )
    pseudo = design_row(pseudo_x, pseudo_y)
    weight = cfg.pseudo_weight

    precision1 = _symmetric(precision0 + weight * np.einsum("kri,krj->kij", pseudo, pseudo))
    rhs1 = precision0 @ mean0 + weight * np.einsum("kri,kr->ki", pseudo, pseudo_z)
    mean1 = np.linalg.solve(precision1, rhs1[..., None])[..., 0]
    resid1 = pseudo_z - np.einsum("kri,ki->kr", pseudo, mean1)
    gap1 = mean1 - mean0
    shape1 = cfg.sigma2_shape + 0.5 * weight * 2 * ends
    scale1 = cfg.sigma2_scale + 0.5 * (
        weight * np.sum(resid1 * resid1, axis=1) + np.einsum("ki,ij,kj->k", gap1, precision0, gap1)
    )

    # Update 2: the tracking samples
    local = design_row(x - hoop[seg, 0], y - hoop[seg, 1])
    gram = np.add.reduceat(local[:, :, None] * local[:, None, :], starts, axis=0)
    moment = np.add.reduceat(local * z[:, None], starts, axis=0)
    precision2 = _symmetric(precision1 + gram)
    rhs2 = np.einsum("kij,kj->ki", precision1, mean1) + moment
    mean2 = np.linalg.solve(precision2, rhs2[..., None])[..., 0]
    resid2 = z - np.einsum("ri,ri->r", local, mean2[seg])
    ssr = np.add.reduceat(resid2 * resid2, starts)
    gap2 = mean2 - mean1
    shape2 = shape1 + 0.5 * counts
    scale2 = scale1 + 0.5 * (ssr + np.einsum("ki,kij,kj->k", gap2, precision1, gap2))
    rmse = np.sqrt(ssr / counts)

    shift = _shift_matrices(hoop[:, 0], hoop[:, 1])
    shift_inv = np.linalg.inv(shift)
    beta = np.einsum("kij,kj->ki", shift, mean2)
    court_precision = _symmetric(
        np.einsum("kji,kjl,klm->kim", shift_inv, precision2, shift_inv)
    )

    # Horizontal path: least-squares line through x(t), y(t)
    t_min = np.minimum.reduceat(t, starts)
    t_max = np.maximum.reduceat(t, starts)
    xy = stacked[:, 1:3]
    moves = np.add.reduceat(np.any(xy != xy[starts][seg], axis=1).astype(int), starts) > 0
    t_bar = np.add.reduceat(t, starts) / counts
    xy_bar = np.add.reduceat(xy, starts, axis=0) / counts[:, None]
    dt = t - t_bar[seg]
    spread = np.add.reduceat(dt * dt, starts)
    with np.errstate(divide="ignore", invalid="ignore"):
        velocity = np.add.reduceat(dt[:, None] * (xy - xy_bar[seg]), starts, axis=0)
        velocity = velocity / spread[:, None]
        speed = np.hypot(velocity[:, 0], velocity[:, 1])
        direction = velocity / speed[:, None]
    ok = moves & (t_max > t_min) & (speed > 0) & np.all(np.isfinite(direction), axis=1)
    direction = np.where(ok[:, None], direction, [1.0, 0.0])
    flip = np.einsum("ki,ki->k", direction, hoop - release) < 0
    direction = np.where(flip[:, None], -direction, direction)
    origin = xy_bar + np.einsum("ki,ki->k", release - xy_bar, direction)[:, None] * direction

    # Descending rim-plane crossing along the path
    c0, c1, c2 = restrict_coefficients(beta, origin, direction)
    a, b, c = c2, c1, c0 - hoop_height
    discriminant = b * b - 4.0 * a * c
    root = np.sqrt(np.maximum(discriminant, 0.0))
    slope = -root
    ok &= (np.abs(a) >= 1e-12) & (discriminant >= 0) & (slope < -validity_cfg.tangency_tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(b >= 0, -(b + root) / (2.0 * a), 2.0 * c / (root - b))
    crossing = origin + s[:, None] * direction

    axis = (hoop - release) / np.hypot(*(hoop - release).T)[:, None]
    right = np.column_stack([axis[:, 1], -axis[:, 0]])
    offset = crossing - hoop
    depth = INCHES_PER_FOOT * (rim_radius + np.einsum("ki,ki->k", offset, axis))
    left_right = INCHES_PER_FOOT * np.einsum("ki,ki->k", offset, right)
    with np.errstate(invalid="ignore"):
        angle = np.degrees(np.arctan(-slope))
    ok &= rmse <= validity_cfg.max_rmse
    ok &= np.isfinite(depth) & np.isfinite(left_right) & (angle > 0) & (angle <= 90)

    results: list[Optional[ShotMeasurement]] = []
    for i in range(k):
        if not ok[i]:
            results.append(None)
            continue
        fit = QuadraticFit(
            beta=beta[i],
            precision=court_precision[i],
            residual_rmse=float(rmse[i]),
            n_samples=int(counts[i]),
            sigma2_shape=float(shape2[i]),
            sigma2_scale=float(scale2[i]),
            frame_origin=(float(hoop[i, 0]), float(hoop[i, 1])),
            method="bayes",
        )
        path = LinePath(
            origin_xy=origin[i],
            direction_xy=direction[i],
            speed=float(speed[i]),
            t_range=(float(t_min[i]), float(t_max[i])),
        )
        factors = ShotFactors(float(depth[i]), float(left_right[i]), float(angle[i]))
        results.append(ShotMeasurement(factors=factors, fit=fit, path=path))
    return results
