"""Exception hierarchy shared by every shotlab package."""

# Built-in imports
from typing import Optional


class ShotlabError(Exception):
    """Base class for all shotlab errors."""


################################################################################
# Trajectory geometry
################################################################################


class TrajectoryError(ShotlabError):
    """A single shot's trajectory could not be turned into shot factors."""

    reason: str = "trajectory_error"


class RankDeficient(TrajectoryError):
    reason = "rank_deficient"

    def __init__(self, message: str, condition: Optional[float] = None) -> None:
        super().__init__(message)
        self.condition = condition


class DegeneratePath(TrajectoryError):
    reason = "degenerate_path"


class NoDescendingCrossing(TrajectoryError):
    reason = "no_descending_crossing"


################################################################################
# Shot-make probability model
################################################################################


class ShotModelError(ShotlabError):
    """Training, scoring or prediction of the make-probability model failed."""


class InvalidFactors(ShotModelError):
    pass


class Separation(ShotModelError):
    pass


class OneClass(ShotModelError):
    pass


class InsufficientData(ShotModelError):
    pass


class LengthMismatch(ShotModelError):
    pass


class EmptyZone(ShotModelError):
    pass


################################################################################
# Estimators
################################################################################


class EstimatorError(ShotlabError):
    """A shooting estimator could not be computed."""


class EmptyShots(EstimatorError):
    pass


class MaxIterations(EstimatorError):
    def __init__(self, message: str, best=None) -> None:
        super().__init__(message)
        self.best = best


class DegenerateSample(EstimatorError):
    pass


class NoAttempts(EstimatorError):
    pass


################################################################################
# Evaluation
################################################################################


class EvaluationError(ShotlabError):
    """An evaluation experiment had no usable input."""


class NoQualifyingPlayers(EvaluationError):
    pass


class TooFewPlayers(EvaluationError):
    pass


class ZeroTotalVariance(EvaluationError):
    pass


################################################################################
# Simulation
################################################################################


class SimulationError(ShotlabError):
    pass


class InfeasibleFactors(SimulationError):
    pass


################################################################################
# Pipeline
################################################################################


class PipelineError(ShotlabError):
    pass


class SchemaError(PipelineError):
    def __init__(self, message: str, column: Optional[str] = None) -> None:
        super().__init__(message)
        self.column = column


class OrphanSamples(PipelineError):
    def __init__(self, message: str, shot_ids: Optional[list] = None) -> None:
        super().__init__(message)
        self.shot_ids = shot_ids or []


class NonMonotoneTime(PipelineError):
    def __init__(self, message: str, shot_id: Optional[str] = None) -> None:
        super().__init__(message)
        self.shot_id = shot_id


class MissingArtifact(PipelineError):
    def __init__(self, stage: str, path: Optional[str] = None) -> None:
        super().__init__(f"missing output of stage {stage}" + (f": {path}" if path else ""))
        self.stage = stage
        self.path = path


class StageFailed(PipelineError):
    """Raised by the pipeline handler, tagged with the failing stage."""

    def __init__(self, stage: str, message: str, shot_id: Optional[str] = None) -> None:
        super().__init__(message)
        self.stage = stage
        self.message = message
        self.shot_id = shot_id

    def __str__(self) -> str:
        suffix = f" (shot_id={self.shot_id})" if self.shot_id else ""
        return f"[{self.stage}] {self.message}{suffix}"
