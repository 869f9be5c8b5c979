###############################################################################
# Entrypoint of the shotlab command line
###############################################################################

# External imports
import typer

# Own imports
from cli.commands import stages


app = typer.Typer(
    name="shotlab",
    help="Shot factors from tracking data, make probabilities and shooting estimators.",
    add_completion=False,
    no_args_is_help=True,
)
stages.register(app)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
