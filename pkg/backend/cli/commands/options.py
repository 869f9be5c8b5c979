# Built-in imports
from pathlib import Path
from typing import Annotated, Optional

# External imports
import typer
from pydantic import ValidationError

# Own imports
from common.config import PipelineConfig


ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", help="JSON config file; missing keys take defaults."),
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Overrides the run and simulation seeds.")
]
JobsOption = Annotated[Optional[int], typer.Option("--jobs", help="Worker threads per stage.")]
OutOption = Annotated[Optional[Path], typer.Option("--out", help="Artifact directory.")]


def resolve_config(
    config: Optional[Path],
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    out: Optional[Path] = None,
) -> PipelineConfig:
    """Config file plus flag overrides; bad input exits with a [config] diagnostic."""
    try:
        resolved = PipelineConfig.load(config, seed=seed, jobs=jobs, out_dir=out)
        if seed is not None:
            simulation = resolved.simulation.model_copy(update={"seed": seed})
            resolved = PipelineConfig.model_validate(
                {**resolved.model_dump(), "simulation": simulation.model_dump()}
            )
        return resolved
    except (OSError, ValueError, ValidationError) as error:
        typer.echo(f"[config] {error}", err=True)
        raise typer.Exit(code=1)
