# Built-in imports
import json

# External imports
import numpy as np
import pytest

# Own imports
from common.exceptions import MissingArtifact
from common.helpers.artifact_helper import ArtifactStore


@pytest.fixture
def store(tmp_path) -> ArtifactStore:
    return ArtifactStore(tmp_path / "run")


def test_put_json_is_versioned_and_nan_free(store):
    payload = {"b": float("nan"), "a": [np.float64(1.5), {"c": float("nan")}]}
    path = store.put_json(payload, "x.json")

    document = json.loads(path.read_text(encoding="utf-8"))

    assert document == {"format_version": 1, "a": [1.5, {"c": None}], "b": None}
    assert store.get_json("stage", "x.json") == document


def test_require_names_the_stage(store):
    with pytest.raises(MissingArtifact) as raised:
        store.require("shotprob", "model", "probabilities.csv")

    assert raised.value.stage == "shotprob"
    assert "probabilities.csv" in str(raised.value)


def test_cache_hit_needs_same_key_and_outputs(store, tmp_path):
    source = tmp_path / "input.csv"
    source.write_text("a\n1\n", encoding="utf-8")
    output = store.put_json({}, "out.json")
    key = store.cache_key([source], "sections")

    assert not store.cache_hit("fit", key, [output])
    store.record_cache("fit", key)
    assert store.cache_hit("fit", key, [output])
    assert not store.cache_hit("fit", store.cache_key([source], "other"), [output])

    output.unlink()
    assert not store.cache_hit("fit", key, [output])


def test_cache_key_follows_input_content(store, tmp_path):
    source = tmp_path / "input.csv"
    source.write_text("a\n1\n", encoding="utf-8")
    before = store.cache_key([source], "sections")
    source.write_text("a\n2\n", encoding="utf-8")

    assert store.cache_key([source], "sections") != before


def test_manifest_skips_cache_and_itself(store):
    store.put_json({"v": 1}, "report", "summary.json")
    store.record_cache("report", "k")

    store.write_manifest()
    manifest = store.get_json("success", "manifest.json")
    again = store.write_manifest().read_bytes()

    assert [f["path"] for f in manifest["files"]] == ["report/summary.json"]
    assert len(manifest["files"][0]["sha256"]) == 64
    assert again == store.path("manifest.json").read_bytes()
