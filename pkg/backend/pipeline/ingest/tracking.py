# Built-in imports
from dataclasses import dataclass
from typing import Literal

# External imports
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

# Own imports
from common.config import DatasetPaths
from common.exceptions import NonMonotoneTime, OrphanSamples, SchemaError
from common.helpers.csv_helper import read_csv
from common.logger import custom_logger
from trajgeom.models import ShotContext


logger = custom_logger()

TRACKING_COLUMNS = ["shot_id", "t", "x", "y", "z"]
SHOT_COLUMNS = [
    "shot_id",
    "player_id",
    "game_id",
    "period_half",
    "shot_class",
    "release_x",
    "release_y",
    "hoop_x",
    "hoop_y",
    "outcome",
    "points",
]


class ShotRow(BaseModel):
    """One row of the shots CSV."""

    model_config = ConfigDict(frozen=True)

    shot_id: str
    player_id: str
    game_id: int
    period_half: Literal[1, 2]
    shot_class: Literal["2PT", "3PT", "FT"]
    release_x: float
    release_y: float
    hoop_x: float
    hoop_y: float
    outcome: Literal[0, 1]
    points: int = Field(ge=1, le=3)


_SHOT_ROWS = TypeAdapter(list[ShotRow])


@dataclass(frozen=True)
class ShotRecord:
    row: ShotRow
    samples: np.ndarray

    @property
    def shot_id(self) -> str:
        return self.row.shot_id

    @property
    def ctx(self) -> ShotContext:
        return ShotContext(
            release_xy=(self.row.release_x, self.row.release_y),
            hoop_xy=(self.row.hoop_x, self.row.hoop_y),
        )


@dataclass(frozen=True)
class IngestedShots:
    records: list[ShotRecord]
    n_tracking_rows: int

    def metadata(self) -> pd.DataFrame:
        return pd.DataFrame([r.row.model_dump() for r in self.records], columns=SHOT_COLUMNS)

    def summary(self) -> dict:
        counts = pd.Series([r.row.shot_class for r in self.records]).value_counts()
        return {
            "n_shots": len(self.records),
            "n_tracking_rows": self.n_tracking_rows,
            "n_players": len({r.row.player_id for r in self.records}),
            "n_without_samples": sum(1 for r in self.records if len(r.samples) == 0),
            "per_class": {str(k): int(v) for k, v in sorted(counts.items())},
        }


def _validate_shots(shots: pd.DataFrame) -> list[ShotRow]:
    try:
        rows = _SHOT_ROWS.validate_python(shots[SHOT_COLUMNS].to_dict("records"))
    except ValidationError as error:
        first = error.errors()[0]
        column = str(first["loc"][-1]) if first["loc"] else None
        raise SchemaError(f"shots: invalid value in column '{column}': {first['msg']}", column)
    duplicated = shots["shot_id"][shots["shot_id"].duplicated()]
    if not duplicated.empty:
        raise SchemaError(f"shots: duplicate shot_id {duplicated.iloc[0]}", "shot_id")
    return rows


def ingest_tracking(paths: DatasetPaths) -> IngestedShots:
    """
    Reads the tracking and shots CSVs and joins samples to shot metadata.
    Shots keep the shots-file order; samples keep file order within a shot.
    :raises SchemaError: missing column or invalid value.
    :raises OrphanSamples: tracking rows whose shot_id has no metadata.
    :raises NonMonotoneTime: a shot whose timestamps do not strictly increase.
    """
    text_ids = {"shot_id": str, "player_id": str}
    shots = read_csv(paths.shots, SHOT_COLUMNS, dtype=text_ids)
    tracking = read_csv(paths.tracking, TRACKING_COLUMNS, dtype={"shot_id": str})
    rows = _validate_shots(shots)

    for column in ("t", "z"):
        if (tracking[column] < 0).any():
            raise SchemaError(f"tracking: negative values in column '{column}'", column)

    known = set(shots["shot_id"])
    orphans = sorted(set(tracking["shot_id"]) - known)
    if orphans:
        raise OrphanSamples(
            f"{len(orphans)} shot_ids in tracking have no shot metadata, e.g. {orphans[0]}",
            shot_ids=orphans,
        )

    ordered = tracking.sort_values("shot_id", kind="stable")
    ids = ordered["shot_id"].to_numpy()
    data = ordered[["t", "x", "y", "z"]].to_numpy(dtype=float)
    same_shot = ids[1:] == ids[:-1]
    backwards = np.flatnonzero(same_shot & (np.diff(data[:, 0]) <= 0))
    if backwards.size:
        shot_id = str(ids[backwards[0]])
        raise NonMonotoneTime(f"timestamps not strictly increasing for shot {shot_id}", shot_id)

    unique_ids, starts = np.unique(ids, return_index=True)
    bounds = dict(zip(unique_ids, zip(starts, list(starts[1:]) + [len(ids)])))
    empty = np.empty((0, 4))
    records = [
        ShotRecord(
            row=row,
            samples=data[slice(*bounds[row.shot_id])] if row.shot_id in bounds else empty,
        )
        for row in rows
    ]
    ingested = IngestedShots(records=records, n_tracking_rows=len(tracking))
    logger.info(ingested.summary(), message_details="ingest_tracking")
    return ingested
