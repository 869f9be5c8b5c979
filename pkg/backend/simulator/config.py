# Built-in imports
from typing import Literal

# External imports
from pydantic import BaseModel, ConfigDict, Field, model_validator


class SimConfig(BaseModel):
    """
    Synthetic league definition. Every distance is in feet unless the field
    name says otherwise; factor spreads are in inches/degrees.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    enabled: bool = True
    seed: int = 2016
    n_players: int = Field(260, ge=1)
    shots_per_player: tuple[int, int] = (160, 240)
    n_games: int = Field(82, ge=2)
    class_mix: dict[str, float] = {"3PT": 0.45, "2PT": 0.35, "FT": 0.20}

    # Player skill theta ~ Beta(skill_alpha, skill_beta)
    skill_alpha: float = Field(3.5, gt=0)
    skill_beta: float = Field(6.5, gt=0)

    # Factor distribution at spread multiplier 1
    factor_center: tuple[float, float, float] = (11.0, 0.0, 45.0)
    factor_sd: tuple[float, float, float] = (4.0, 3.0, 5.0)
    angle_bounds: tuple[float, float] = (15.0, 80.0)

    # Generative logistic surface over the feature basis, raw units
    optimum_height: float = 3.0
    surface_sd: tuple[float, float, float] = (4.0, 3.0, 8.0)
    outcome_model: Literal["logistic", "geometric"] = "logistic"
    ball_radius_in: float = Field(4.7, gt=0)

    # Tracking noise and geometry
    noise_xy: float = Field(0.15, ge=0)
    noise_z: float = Field(0.4, ge=0)
    sample_rate: float = Field(25.0, gt=0)
    release_height: float = 7.0
    hoop_xy: tuple[float, float] = (5.25, 25.0)
    hoop_height: float = 10.0
    rim_radius: float = Field(0.75, gt=0)
    gravity: float = 32.174

    @model_validator(mode="after")
    def check_ranges(self) -> "SimConfig":
        lo, hi = self.shots_per_player
        if lo < 1 or hi < lo:
            raise ValueError("shots_per_player must be an increasing positive range")
        if any(sd < 0 for sd in self.factor_sd):
            raise ValueError("factor_sd entries must be >= 0")
        if set(self.class_mix) - {"3PT", "2PT", "FT"}:
            raise ValueError("class_mix keys must be 3PT, 2PT or FT")
        if abs(sum(self.class_mix.values()) - 1.0) > 1e-9:
            raise ValueError("class_mix must sum to 1")
        return self
