"""
Logistic make-probability model over the quadratic shot-factor basis, fitted
by iteratively reweighted least squares on standardized features.
"""

# Built-in imports
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

# External imports
import numpy as np
from scipy.special import expit

# Own imports
from common.config import ModelCfg
from common.exceptions import (
    InsufficientData,
    InvalidFactors,
    LengthMismatch,
    OneClass,
    Separation,
)
from common.logger import custom_logger
from shotprob.features import FEATURE_NAMES, N_FEATURES, build_features
from trajgeom.models import ShotFactors


logger = custom_logger()

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ProbModel:
    """
    Fitted model. `coef` is on the standardized scale: columns 2..10 are
    centred by feature_mean and divided by feature_scale before the dot product.
    """

    coef: np.ndarray
    feature_mean: np.ndarray
    feature_scale: np.ndarray
    train_n: int
    converged: bool
    loglik: float
    coef_cov: np.ndarray = field(default_factory=lambda: np.zeros((N_FEATURES, N_FEATURES)))
    iterations: int = 0
    shot_class: str = ""

    def __post_init__(self) -> None:
        if self.coef.shape != (N_FEATURES,):
            raise ValueError(f"coef must have {N_FEATURES} entries")
        if np.any(self.feature_scale <= 0):
            raise ValueError("feature_scale must be > 0")

    def standardize(self, features) -> np.ndarray:
        x = np.array(features, dtype=float, copy=True)
        x[..., 1:] = (x[..., 1:] - self.feature_mean) / self.feature_scale
        return x

    def linear_predictor(self, features) -> np.ndarray:
        """eta for raw (unstandardized) feature rows."""
        return self.standardize(features) @ self.coef

    def predict(self, features) -> np.ndarray:
        return expit(self.linear_predictor(features))

    def _raw_transform(self) -> np.ndarray:
        # raw = A @ standardized coefficients
        transform = np.zeros((N_FEATURES, N_FEATURES))
        transform[0, 0] = 1.0
        transform[0, 1:] = -self.feature_mean / self.feature_scale
        transform[1:, 1:] = np.diag(1.0 / self.feature_scale)
        return transform

    def raw_coef(self) -> np.ndarray:
        """Coefficients acting on the unstandardized features."""
        return self._raw_transform() @ self.coef

    def standard_errors(self, raw: bool = False) -> np.ndarray:
        cov = self.coef_cov
        if raw:
            transform = self._raw_transform()
            cov = transform @ cov @ transform.T
        return np.sqrt(np.clip(np.diag(cov), 0.0, None))

    def to_dict(self) -> dict:
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "shot_class": self.shot_class,
            "feature_names": list(FEATURE_NAMES),
            "coef": self.coef.tolist(),
            "coef_raw": self.raw_coef().tolist(),
            "se": self.standard_errors().tolist(),
            "se_raw": self.standard_errors(raw=True).tolist(),
            "feature_mean": self.feature_mean.tolist(),
            "feature_scale": self.feature_scale.tolist(),
            "coef_cov": self.coef_cov.tolist(),
            "train_n": self.train_n,
            "converged": self.converged,
            "loglik": self.loglik,
            "iterations": self.iterations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProbModel":
        if data.get("format_version") != MODEL_FORMAT_VERSION:
            raise ValueError(f"unsupported model format_version {data.get('format_version')}")
        return cls(
            coef=np.asarray(data["coef"], dtype=float),
            feature_mean=np.asarray(data["feature_mean"], dtype=float),
            feature_scale=np.asarray(data["feature_scale"], dtype=float),
            train_n=int(data["train_n"]),
            converged=bool(data["converged"]),
            loglik=float(data["loglik"]),
            coef_cov=np.asarray(data["coef_cov"], dtype=float),
            iterations=int(data.get("iterations", 0)),
            shot_class=data.get("shot_class", ""),
        )


def save_model(model: ProbModel, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model.to_dict(), indent=2, sort_keys=True), encoding="utf-8")
    return path


def load_model(path: Path) -> ProbModel:
    return ProbModel.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _loglik(design: np.ndarray, y: np.ndarray, w: np.ndarray) -> float:
    eta = design @ w
    return float(np.sum(y * eta - np.logaddexp(0.0, eta)))


def train_logistic(
    features,
    outcomes: Sequence[int],
    cfg: Optional[ModelCfg] = None,
    shot_class: str = "",
) -> ProbModel:
    """
    Maximum-likelihood logistic regression by IRLS with step-halving.
    :param features (array-like): raw feature rows of shape (n, 10).
    :param outcomes (Sequence[int]): 0/1 labels.
    :param cfg (Optional(ModelCfg)): convergence and guard settings.
    :return (ProbModel): fitted model.
    """
    cfg = cfg or ModelCfg()
    x = np.atleast_2d(np.asarray(features, dtype=float))
    y = np.asarray(outcomes, dtype=float)

    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(f"{x.shape[0]} feature rows vs {y.shape[0]} outcomes")
    if x.shape[1] != N_FEATURES:
        raise InvalidFactors(f"expected {N_FEATURES} feature columns, got {x.shape[1]}")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("outcomes must be 0 or 1")
    if np.unique(y).size < 2:
        raise OneClass(f"all {y.size} outcomes are {int(y[0]) if y.size else 'missing'}")
    if y.size < cfg.min_rows:
        raise InsufficientData(f"{y.size} rows, need at least {cfg.min_rows}")

    mean = x[:, 1:].mean(axis=0)
    scale = x[:, 1:].std(axis=0)
    active = scale > 1e-12 * np.maximum(1.0, np.abs(mean))
    scale = np.where(active, scale, 1.0)
    mean = np.where(active, mean, 0.0)

    z = x.copy()
    z[:, 1:] = (z[:, 1:] - mean) / scale
    columns = np.concatenate([[0], 1 + np.flatnonzero(active)])
    design = z[:, columns]

    w = np.zeros(columns.size)
    ll = _loglik(design, y, w)
    converged = False
    iteration = 0
    for iteration in range(1, cfg.max_iter + 1):
        p = expit(design @ w)
        gradient = design.T @ (y - p)
        hessian = design.T @ (design * (p * (1.0 - p))[:, None])
        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError as error:
            raise Separation(f"singular information matrix at iteration {iteration}") from error

        size = 1.0
        candidate, ll_candidate = w + step, _loglik(design, y, w + step)
        for _ in range(cfg.max_halvings):
            if ll_candidate >= ll - 1e-12 * abs(ll):
                break
            size *= 0.5
            candidate = w + size * step
            ll_candidate = _loglik(design, y, candidate)

        if not np.all(np.isfinite(candidate)) or np.max(np.abs(candidate)) > cfg.max_coef:
            raise Separation(
                f"coefficients diverged past {cfg.max_coef:g} at iteration {iteration}"
            )

        change = ll_candidate - ll
        w, ll = candidate, ll_candidate
        if abs(change) < cfg.tol:
            converged = True
            break

    if not converged:
        logger.warning(f"IRLS stopped after {cfg.max_iter} iterations without converging")

    p = expit(design @ w)
    information = design.T @ (design * (p * (1.0 - p))[:, None])
    coef = np.zeros(N_FEATURES)
    coef[columns] = w
    coef_cov = np.zeros((N_FEATURES, N_FEATURES))
    try:
        coef_cov[np.ix_(columns, columns)] = np.linalg.inv(information)
    except np.linalg.LinAlgError:
        logger.warning("information matrix not invertible, standard errors unavailable")
        coef_cov[np.ix_(columns, columns)] = np.nan

    logger.debug(
        {"iterations": iteration, "loglik": ll, "converged": converged, "n": int(y.size)},
        message_details="train_logistic",
    )
    return ProbModel(
        coef=coef,
        feature_mean=mean,
        feature_scale=scale,
        train_n=int(y.size),
        converged=converged,
        loglik=ll,
        coef_cov=coef_cov,
        iterations=iteration,
        shot_class=shot_class,
    )


def predict_make_prob(model: ProbModel, factors: ShotFactors) -> float:
    """Make probability of one valid shot."""
    if not model.converged:
        raise ValueError("model did not converge, refusing to predict")
    return float(model.predict(build_features(factors)))


def predict_shot_probs(model: ProbModel, factors: Sequence[ShotFactors]) -> np.ndarray:
    """Per-shot probabilities; invalid shots take their 0/1 fill probability."""
    probs = np.empty(len(factors))
    valid = [i for i, f in enumerate(factors) if f.valid]
    for i, f in enumerate(factors):
        if not f.valid:
            probs[i] = f.fill_prob
    if valid:
        rows = np.vstack([build_features(factors[i]) for i in valid])
        probs[valid] = model.predict(rows)
    return probs
