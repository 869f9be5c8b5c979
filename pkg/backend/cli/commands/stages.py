# Built-in imports
from typing import Optional, Sequence

# External imports
import typer

# Own imports
from cli.commands.options import ConfigOption, JobsOption, OutOption, SeedOption, resolve_config
from common.exceptions import StageFailed
from pipeline.pipeline_handler import run_pipeline


def _run(config, seed, jobs, out, stages: Optional[Sequence[str]]) -> None:
    resolved = resolve_config(config, seed, jobs, out)
    try:
        out_dir = run_pipeline(resolved, stages)
    except StageFailed as error:
        typer.echo(str(error), err=True)
        raise typer.Exit(code=1)
    typer.echo(str(out_dir))


def _stage_command(stages: Optional[Sequence[str]], doc: str):
    def command(
        config: ConfigOption = None,
        seed: SeedOption = None,
        jobs: JobsOption = None,
        out: OutOption = None,
    ) -> None:
        _run(config, seed, jobs, out, stages)

    command.__doc__ = doc
    return command


STAGE_COMMANDS = {
    "simulate": (["simulate"], "Write synthetic train and predict seasons."),
    "ingest": (["ingest"], "Validate the tracking and shots files."),
    "fit-trajectories": (["fit"], "Measure shot factors from tracking samples."),
    "train-model": (["shotprob"], "Train the make-probability models and predict."),
    "estimate": (["estimate"], "Per-player shooting estimates on the prediction set."),
    "evaluate": (["evaluate"], "Half-season comparisons of the estimators."),
    "report": (["report"], "Summary text, JSON and plot CSVs."),
    "run-all": (None, "Every stage in order, then the manifest."),
}


def register(app: typer.Typer) -> None:
    for name, (stages, doc) in STAGE_COMMANDS.items():
        app.command(name)(_stage_command(stages, doc))

    @app.command("print-config")
    def print_config(
        config: ConfigOption = None,
        seed: SeedOption = None,
        jobs: JobsOption = None,
        out: OutOption = None,
    ) -> None:
        """Print the fully resolved configuration."""
        typer.echo(resolve_config(config, seed, jobs, out).to_json())
