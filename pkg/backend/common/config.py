"""
Pipeline configuration. One JSON file holds every section below; missing keys
take the defaults declared here and `print-config` dumps the resolved result.
"""

# Built-in imports
import hashlib
import json
from pathlib import Path
from typing import Annotated, Literal, Optional

# External imports
from pydantic import BaseModel, ConfigDict, Field

# Own imports
from simulator.config import SimConfig


CONFIG_FORMAT_VERSION = 1


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class BayesCfg(_Section):
    """Conjugate prior and pseudo-data used by the Bayesian height fit."""

    prior_mean: tuple[float, ...] = (0.0,) * 6
    prior_precision: float = Field(1e-6, gt=0)
    pseudo_weight: float = Field(1.0, ge=0)
    release_height: float = 7.0
    sigma2_shape: float = Field(1e-3, gt=0)
    sigma2_scale: float = Field(1e-3, gt=0)


class ValidityCfg(_Section):
    min_samples: int = Field(8, ge=1)
    max_rmse: float = Field(1.5, gt=0)
    max_condition: float = Field(1e12, gt=1)
    tangency_tol: float = Field(1e-6, ge=0)
    min_path_length: float = Field(0.0, ge=0)


class ModelCfg(_Section):
    tol: float = Field(1e-8, gt=0)
    max_iter: int = Field(100, ge=1)
    max_halvings: int = Field(30, ge=0)
    max_coef: float = Field(1e3, gt=0)
    min_rows: int = Field(50, ge=1)
    cv_folds: int = Field(10, ge=2)
    threshold: float = Field(0.5, gt=0, lt=1)


class GmzCfg(_Section):
    angle_center: float = 45.0
    angle_halfwidth: float = Field(2.0, ge=0)
    lr_bounds: tuple[float, float] = (-2.0, 2.0)
    depth_bounds: tuple[float, float] = (7.0, 14.0)


class OptimizerCfg(_Section):
    """Nelder-Mead stopping rule (simplex spread in x and f)."""

    xatol: float = Field(1e-8, gt=0)
    fatol: float = Field(1e-8, gt=0)
    max_iter: int = Field(500, ge=1)


class ShrinkageCfg(_Section):
    alpha0: float = Field(3.5, gt=0)
    beta0: float = Field(6.5, gt=0)
    weight: Literal["attempts", "concentration"] = "attempts"
    ci_level: float = Field(0.9, gt=0, lt=1)


class EvaluationCfg(_Section):
    min_attempts: int = Field(10, ge=0)
    fractions: tuple[float, ...] = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)
    rmse_seeds: int = Field(20, ge=1)
    rmse_class: str = "3PT"
    # 0 leaves estimates unshrunk
    alpha0_grid: tuple[Annotated[float, Field(ge=0)], ...] = (
        0.0,
        0.25,
        0.5,
        1.0,
        2.0,
        3.5,
        5.0,
        7.5,
        10.0,
        15.0,
        20.0,
    )
    prior_mean: Optional[float] = Field(None, gt=0, lt=1)
    sd_repeats: int = Field(10, ge=1)
    sd_class: str = "3PT"
    sd_covariance_scale: float = Field(1.0, gt=0)


class DatasetPaths(_Section):
    tracking: Path
    shots: Path


class PipelineConfig(_Section):
    """Top-level configuration consumed by every stage and CLI subcommand."""

    format_version: int = CONFIG_FORMAT_VERSION
    out_dir: Path = Path("artifacts")
    seed: int = 0
    jobs: int = Field(1, ge=1)
    fit_method: Literal["bayes", "ols"] = "bayes"
    # Shots per dataset fitted with the other method for the comparison; None fits all
    comparison_shots: Optional[int] = Field(2000, ge=1)
    train: Optional[DatasetPaths] = None
    predict: Optional[DatasetPaths] = None
    bayes: BayesCfg = BayesCfg()
    validity: ValidityCfg = ValidityCfg()
    model: ModelCfg = ModelCfg()
    gmz: GmzCfg = GmzCfg()
    optimizer: OptimizerCfg = OptimizerCfg()
    shrinkage: ShrinkageCfg = ShrinkageCfg()
    evaluation: EvaluationCfg = EvaluationCfg()
    simulation: SimConfig = SimConfig()

    @classmethod
    def load(cls, path: Optional[Path] = None, **overrides) -> "PipelineConfig":
        """
        Loads the JSON config file (or the defaults) and applies CLI overrides.
        :param path (Optional(Path)): JSON config file.
        :param overrides: top-level fields to replace (None values ignored).
        """
        data = json.loads(Path(path).read_text(encoding="utf-8")) if path else {}
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)

    def section_hash(self, *names: str) -> str:
        """sha256 over the named config sections, used as stage cache key input."""
        dumped = self.model_dump(mode="json")
        payload = {name: dumped[name] for name in names}
        return _sha256(json.dumps(payload, sort_keys=True))

    def run_key(self) -> str:
        return _sha256(json.dumps(self.model_dump(mode="json"), sort_keys=True))[:16]

    @property
    def train_paths(self) -> DatasetPaths:
        if self.train is not None:
            return self.train
        return DatasetPaths(
            tracking=self.out_dir / "data" / "train" / "tracking.csv",
            shots=self.out_dir / "data" / "train" / "shots.csv",
        )

    @property
    def predict_paths(self) -> DatasetPaths:
        if self.predict is not None:
            return self.predict
        if self.train is not None:
            return self.train
        return DatasetPaths(
            tracking=self.out_dir / "data" / "predict" / "tracking.csv",
            shots=self.out_dir / "data" / "predict" / "shots.csv",
        )


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
