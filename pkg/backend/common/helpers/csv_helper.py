# Built-in imports
from pathlib import Path
from typing import Iterable, Optional

# External imports
import pandas as pd

# Own imports
from common.exceptions import SchemaError
from common.logger import custom_logger


logger = custom_logger()

FORMAT_VERSION = 1
FLOAT_FORMAT = "%.10g"


def write_csv(df: pd.DataFrame, path: Path) -> Path:
    """
    Writes a DataFrame behind a format-version comment line, with a fixed
    float format so identical data always gives identical bytes.
    :param df (pd.DataFrame): table to write (index is dropped).
    :param path (Path): destination file, parents created on demand.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# format_version={FORMAT_VERSION}\n")
        df.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.debug(f"wrote {len(df)} rows to {path}")
    return path


def read_csv(
    path: Path,
    required_columns: Optional[Iterable[str]] = None,
    dtype: Optional[dict] = None,
) -> pd.DataFrame:
    """
    Reads a CSV written by write_csv (or a plain CSV with a header row).
    :param required_columns (Optional(Iterable[str])): columns that must exist.
    :raises SchemaError: naming the first missing column.
    """
    path = Path(path)
    try:
        df = pd.read_csv(path, comment="#", dtype=dtype)
    except pd.errors.EmptyDataError as error:
        raise SchemaError(f"{path} has no header row") from error

    for column in required_columns or ():
        if column not in df.columns:
            logger.error(f"{path} lacks required column {column}")
            raise SchemaError(f"{path.name}: missing column '{column}'", column=column)
    return df
