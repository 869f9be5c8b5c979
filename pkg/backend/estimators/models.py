# Built-in imports
from dataclasses import asdict, dataclass, field
from typing import Optional

# External imports
import numpy as np


SHOT_CLASSES = ("3PT", "2PT", "FT")
POINTS = {"3PT": 3, "2PT": 2, "FT": 1}


@dataclass(frozen=True)
class ClassShots:
    """
    One player's shots of one class, in shot order. `valid` marks shots whose
    p_make came from the model; the others carry their 0/1 fill.
    """

    outcomes: np.ndarray
    p_make: np.ndarray
    valid: np.ndarray
    game_ids: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))

    def __post_init__(self) -> None:
        n = len(self.outcomes)
        if len(self.p_make) != n or len(self.valid) != n:
            raise ValueError("outcomes, p_make and valid must have equal lengths")
        if len(self.game_ids) not in (0, n):
            raise ValueError("game_ids must be empty or match the shot count")
        if n and (np.any(self.p_make < 0) or np.any(self.p_make > 1)):
            raise ValueError("p_make must lie in [0, 1]")

    @classmethod
    def build(cls, outcomes, p_make=None, valid=None, game_ids=None) -> "ClassShots":
        outcomes = np.asarray(outcomes, dtype=int)
        p_make = outcomes.astype(float) if p_make is None else np.asarray(p_make, dtype=float)
        valid = np.ones(len(outcomes), dtype=bool) if valid is None else np.asarray(valid, bool)
        game_ids = np.empty(0, dtype=int) if game_ids is None else np.asarray(game_ids)
        return cls(outcomes, p_make, valid, game_ids)

    @classmethod
    def empty(cls) -> "ClassShots":
        return cls.build([])

    @property
    def n(self) -> int:
        return len(self.outcomes)

    def subset(self, mask) -> "ClassShots":
        """Shots selected by a boolean mask, order preserved."""
        mask = np.asarray(mask, dtype=bool)
        games = self.game_ids[mask] if len(self.game_ids) else self.game_ids
        return ClassShots(self.outcomes[mask], self.p_make[mask], self.valid[mask], games)


@dataclass(frozen=True)
class PlayerShots:
    player_id: str
    shots: dict[str, ClassShots] = field(default_factory=dict)

    def __post_init__(self) -> None:
        unknown = set(self.shots) - set(SHOT_CLASSES)
        if unknown:
            raise ValueError(f"unknown shot classes {sorted(unknown)}")

    def of(self, shot_class: str) -> ClassShots:
        return self.shots.get(shot_class, ClassShots.empty())

    def n(self, shot_class: str) -> int:
        return self.of(shot_class).n


@dataclass(frozen=True)
class BetaFit:
    alpha: float
    beta: float
    loglik: float = float("nan")
    converged: bool = True

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"Beta shapes must be > 0, got ({self.alpha}, {self.beta})")

    @property
    def theta(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def v(self) -> float:
        return self.alpha + self.beta


@dataclass(frozen=True)
class PlayerEstimate:
    player_id: str
    shot_class: str
    n: int
    theta_raw: float
    theta_rb: float
    theta_shrunk_raw: float
    theta_shrunk_rb: float
    alpha: float
    beta: float
    var_raw: float
    var_rb: float
    ci_lo: float
    ci_hi: float
    ci_raw_lo: float
    ci_raw_hi: float
    beta_fit: Optional[str] = None

    def as_dict(self) -> dict:
        return asdict(self)
