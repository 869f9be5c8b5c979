# Built-in imports
import json
import shutil

# External imports
import pytest

# Own imports
from common.exceptions import MissingArtifact
from pipeline.save.emit_report import emit_report


def test_report_needs_the_model_outputs(finished_run, tmp_path):
    partial = tmp_path / "partial"
    shutil.copytree(finished_run.out_dir / "factors", partial / "factors")

    with pytest.raises(MissingArtifact) as raised:
        emit_report(partial)

    assert raised.value.stage == "shotprob"


def test_report_files(finished_run):
    root = finished_run.out_dir / "report"
    summary = json.loads((root / "summary.json").read_text(encoding="utf-8"))
    text = (root / "summary.txt").read_text(encoding="utf-8")

    assert summary["format_version"] == 1
    assert summary["fill_accounting"]["total"] == (
        summary["fill_accounting"]["model"] + summary["fill_accounting"]["fill"]
    )
    assert set(summary["mae_table"]["values"]) == {"3PT", "FT", "2PT", "TS"}
    assert "grand_mean" in summary["scores"]["table"]
    assert text.startswith("shotlab report (fit method bayes)")
    for name in ("fig4_sd.csv", "profile_surface.csv", "profile_angle.csv"):
        assert (root / name).read_text(encoding="utf-8").startswith("# format_version=1\n")


def test_report_is_repeatable(finished_run, tmp_path):
    copy = tmp_path / "copy"
    shutil.copytree(finished_run.out_dir, copy)

    emit_report(copy)

    for name in ("summary.json", "summary.txt", "fig6_rmse.csv"):
        assert (copy / "report" / name).read_bytes() == (
            finished_run.out_dir / "report" / name
        ).read_bytes()
