# Built-in imports
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

# External imports
import numpy as np
from sklearn.metrics import brier_score_loss, log_loss
from sklearn.model_selection import KFold

# Own imports
from common.config import GmzCfg, ModelCfg
from common.exceptions import EmptyZone, LengthMismatch, ShotModelError
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from shotprob.features import expand_factors
from shotprob.logistic import ProbModel, train_logistic
from trajgeom.models import ShotFactors


logger = custom_logger()

PROB_CLIP = 1e-15


@dataclass(frozen=True)
class ScoreReport:
    misclassification: float
    brier: float
    logloss: float
    n: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GmzResult:
    rate: float
    n_in_zone: int


def _check_pair(preds, outcomes) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(preds, dtype=float).ravel()
    y = np.asarray(outcomes, dtype=float).ravel()
    if p.size != y.size:
        raise LengthMismatch(f"{p.size} predictions vs {y.size} outcomes")
    if p.size == 0:
        raise LengthMismatch("cannot score an empty prediction set")
    if np.any((p < 0) | (p > 1)):
        raise ValueError("predictions must lie in [0, 1]")
    return p, y


def score_brier(preds, outcomes) -> float:
    p, y = _check_pair(preds, outcomes)
    return float(brier_score_loss(y.astype(int), p, pos_label=1))


def score_logloss(preds, outcomes) -> float:
    """Mean negative log-likelihood in nats, predictions clipped to [1e-15, 1 - 1e-15]."""
    p, y = _check_pair(preds, outcomes)
    p = np.clip(p, PROB_CLIP, 1.0 - PROB_CLIP)
    return float(log_loss(y.astype(int), p, labels=[0, 1]))


def score_misclassification(preds, outcomes, threshold: float = 0.5) -> float:
    p, y = _check_pair(preds, outcomes)
    return float(np.mean((p >= threshold) != (y == 1)))


def score_report(preds, outcomes, threshold: float = 0.5) -> ScoreReport:
    p, y = _check_pair(preds, outcomes)
    return ScoreReport(
        misclassification=score_misclassification(p, y, threshold),
        brier=score_brier(p, y),
        logloss=score_logloss(p, y),
        n=int(p.size),
    )


def crossval_misclassification(
    features,
    outcomes: Sequence[int],
    k: int = 10,
    seed: int = 0,
    cfg: Optional[ModelCfg] = None,
    jobs: int = 1,
) -> float:
    """
    k-fold cross-validated misclassification rate: seeded shuffled folds,
    mean of the per-fold error rates. Folds may train concurrently.
    """
    cfg = cfg or ModelCfg()
    x = np.atleast_2d(np.asarray(features, dtype=float))
    y = np.asarray(outcomes, dtype=int)
    if k < 2:
        raise ValueError("k must be >= 2")
    if y.size < k:
        raise ValueError(f"{y.size} rows cannot fill {k} folds")
    if x.shape[0] != y.size:
        raise LengthMismatch(f"{x.shape[0]} feature rows vs {y.size} outcomes")

    folds = list(KFold(n_splits=k, shuffle=True, random_state=seed).split(x))

    def fold_error(fold: tuple[np.ndarray, np.ndarray]) -> float:
        train_idx, test_idx = fold
        model = train_logistic(x[train_idx], y[train_idx], cfg)
        return score_misclassification(model.predict(x[test_idx]), y[test_idx], cfg.threshold)

    rates = ordered_map(fold_error, folds, jobs)
    logger.debug({"fold_rates": rates}, message_details="crossval_misclassification")
    return float(np.mean(rates))


def grand_mean_report(train_outcomes, outcomes, threshold: float = 0.5) -> ScoreReport:
    """Scores of the constant predictor equal to the training make rate."""
    rate = float(np.mean(np.asarray(train_outcomes, dtype=float)))
    return score_report(np.full(len(outcomes), rate), outcomes, threshold)


@dataclass(frozen=True)
class MethodData:
    """Valid-shot features and outcomes produced by one trajectory fit method."""

    train_features: np.ndarray
    train_outcomes: np.ndarray
    test_features: np.ndarray
    test_outcomes: np.ndarray


def compare_fit_methods(
    methods: dict[str, MethodData],
    all_train_outcomes,
    all_test_outcomes,
    cfg: Optional[ModelCfg] = None,
    seed: int = 0,
    jobs: int = 1,
) -> dict[str, Optional[ScoreReport]]:
    """
    Score table with a grand_mean row plus one row per fit method: k-fold CV
    misclassification on the training shots, Brier and log loss on the test
    shots. A method whose model cannot be trained gets a None row.
    """
    cfg = cfg or ModelCfg()
    rows: dict[str, Optional[ScoreReport]] = {
        "grand_mean": grand_mean_report(all_train_outcomes, all_test_outcomes, cfg.threshold)
    }
    for name, data in methods.items():
        try:
            cv_rate = crossval_misclassification(
                data.train_features, data.train_outcomes, cfg.cv_folds, seed, cfg, jobs
            )
            model = train_logistic(data.train_features, data.train_outcomes, cfg)
            report = score_report(
                model.predict(data.test_features), data.test_outcomes, cfg.threshold
            )
        except (ShotModelError, ValueError) as error:
            logger.warning(f"fit method {name} could not be scored: {error}")
            rows[name] = None
            continue
        rows[name] = ScoreReport(cv_rate, report.brier, report.logloss, report.n)
    return rows


def pool_reports(reports: list[ScoreReport]) -> Optional[ScoreReport]:
    """Count-weighted average of per-class score reports."""
    reports = [r for r in reports if r is not None and r.n > 0]
    if not reports:
        return None
    weights = np.array([r.n for r in reports], dtype=float)
    return ScoreReport(
        misclassification=float(
            np.average([r.misclassification for r in reports], weights=weights)
        ),
        brier=float(np.average([r.brier for r in reports], weights=weights)),
        logloss=float(np.average([r.logloss for r in reports], weights=weights)),
        n=int(weights.sum()),
    )


def in_gmz(factors: ShotFactors, cfg: GmzCfg) -> bool:
    if not factors.valid:
        return False
    return (
        abs(factors.entry_angle - cfg.angle_center) <= cfg.angle_halfwidth
        and cfg.lr_bounds[0] <= factors.left_right <= cfg.lr_bounds[1]
        and cfg.depth_bounds[0] <= factors.depth <= cfg.depth_bounds[1]
    )


def gmz_make_rate(
    factors: Sequence[ShotFactors], outcomes: Sequence[int], cfg: Optional[GmzCfg] = None
) -> GmzResult:
    """Make fraction of shots inside the guaranteed make zone."""
    cfg = cfg or GmzCfg()
    if len(factors) != len(outcomes):
        raise LengthMismatch(f"{len(factors)} shots vs {len(outcomes)} outcomes")
    made = [int(o) for f, o in zip(factors, outcomes) if in_gmz(f, cfg)]
    if not made:
        raise EmptyZone("no shots inside the guaranteed make zone")
    return GmzResult(rate=float(np.mean(made)), n_in_zone=len(made))


def probability_profile(
    model: ProbModel,
    factors: Sequence[ShotFactors],
    angle_edges: Sequence[float] = tuple(range(25, 66, 5)),
    depth_grid: Sequence[float] = tuple(range(0, 21)),
    lr_grid: Sequence[float] = tuple(range(-10, 11)),
    angle_at: float = 45.0,
) -> dict:
    """
    Plot-ready views of the fitted model: mean predicted probability per
    entry-angle bin over the given shots, and the probability surface over
    depth x left-right at a fixed entry angle.
    """
    valid = [f for f in factors if f.valid]
    angles = np.array([f.entry_angle for f in valid])
    probs = (
        model.predict(
            expand_factors([f.depth for f in valid], [f.left_right for f in valid], angles)
        )
        if valid
        else np.empty(0)
    )

    angle_rows = []
    for lo, hi in zip(angle_edges[:-1], angle_edges[1:]):
        mask = (angles >= lo) & (angles < hi)
        mean_p = float(np.mean(probs[mask])) if mask.any() else float("nan")
        angle_rows.append({"angle_lo": lo, "angle_hi": hi, "mean_p": mean_p, "n": int(mask.sum())})

    depth, lr = np.meshgrid(
        np.asarray(depth_grid, float), np.asarray(lr_grid, float), indexing="ij"
    )
    surface = model.predict(expand_factors(depth, lr, np.full_like(depth, angle_at)))
    surface_rows = [
        {"depth": float(d), "left_right": float(l), "p_make": float(p)}
        for d, l, p in zip(depth.ravel(), lr.ravel(), surface.ravel())
    ]
    return {"angle_profile": angle_rows, "surface": surface_rows, "angle_at": angle_at}
