# Built-in imports
import hashlib
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional

# Own imports
from common.exceptions import MissingArtifact
from common.logger import custom_logger

logger = custom_logger()

FORMAT_VERSION = 1


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


class ArtifactStore:
    """Flat-file artifact directory with JSON documents, stage cache and manifest."""

    CACHE_DIR = ".cache"
    MANIFEST = "manifest.json"

    def __init__(self, root: Path) -> None:
        """
        :param root (Path): artifact directory of one pipeline run.
        """
        self.root = Path(root)

    def path(self, *parts: str) -> Path:
        return self.root.joinpath(*parts)

    def require(self, stage: str, *parts: str) -> Path:
        """
        Path of an artifact produced by `stage`.
        :raises MissingArtifact: naming the stage when the file is absent.
        """
        path = self.path(*parts)
        if not path.is_file():
            logger.error(f"artifact {path} of stage {stage} is missing")
            raise MissingArtifact(stage, str(path))
        return path

    def put_json(self, document: dict, *parts: str) -> Path:
        """
        Writes a JSON document with a top-level format_version field; NaN
        floats become null.
        :param document (dict): JSON-serializable payload.
        """
        path = self.path(*parts)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"format_version": FORMAT_VERSION, **_without_nan(document)}
        path.write_text(
            json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n",
            encoding="utf-8",
        )
        return path

    def get_json(self, stage: str, *parts: str) -> dict:
        return json.loads(self.require(stage, *parts).read_text(encoding="utf-8"))

    def cache_key(self, inputs: Iterable[Path], section_hash: str) -> str:
        """sha256 over the content hashes of the inputs plus the config section hash."""
        digest = hashlib.sha256(section_hash.encode("utf-8"))
        for path in inputs:
            digest.update(file_sha256(path).encode("utf-8"))
        return digest.hexdigest()

    def cache_hit(self, stage: str, key: str, outputs: Iterable[Path]) -> bool:
        """True when the stage ran with the same key and its outputs still exist."""
        entry = self.path(self.CACHE_DIR, f"{stage}.json")
        if not entry.is_file():
            return False
        cached = json.loads(entry.read_text(encoding="utf-8"))
        if cached.get("key") != key:
            return False
        return all(Path(p).is_file() for p in outputs)

    def record_cache(self, stage: str, key: str) -> None:
        self.put_json({"stage": stage, "key": key}, self.CACHE_DIR, f"{stage}.json")

    def write_manifest(self, exclude: Optional[set] = None) -> Path:
        """
        Lists every artifact (cache and manifest excluded) with its sha256 and size.
        """
        exclude = exclude or set()
        files = []
        for path in sorted(self.root.rglob("*")):
            relative = path.relative_to(self.root)
            if not path.is_file() or relative.parts[0] == self.CACHE_DIR:
                continue
            if relative.as_posix() in exclude or relative.as_posix() == self.MANIFEST:
                continue
            files.append(
                {
                    "path": relative.as_posix(),
                    "sha256": file_sha256(path),
                    "bytes": path.stat().st_size,
                }
            )
        logger.info(f"manifest lists {len(files)} artifacts")
        return self.put_json({"files": files}, self.MANIFEST)


def _json_default(value: Any):
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, Path):
        return value.as_posix()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _without_nan(value: Any):
    if isinstance(value, dict):
        return {k: _without_nan(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_without_nan(v) for v in value]
    if isinstance(value, float) and math.isnan(value):
        return None
    return value
