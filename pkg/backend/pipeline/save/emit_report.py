# Built-in imports
from pathlib import Path
from typing import Optional

# External imports
import pandas as pd

# Own imports
from common.helpers.artifact_helper import ArtifactStore
from common.helpers.csv_helper import write_csv
from common.logger import custom_logger
from evaluation.tables import MAE_COLUMNS, MAE_ROWS
from pipeline.base_stage import BaseStage


logger = custom_logger()


def _fmt(value: Optional[float], digits: int = 3) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


def _mae_lines(mae: dict) -> list[str]:
    lines = ["MAE, first half predicting second half (players weighted equally)"]
    lines.append("row   " + "".join(f"{c:>12}" for c in MAE_COLUMNS) + "   players")
    for row in MAE_ROWS:
        count = mae["n_players"].get(row, 0)
        if count == 0:
            lines.append(f"{row:<6}no qualifying players")
            continue
        cells = "".join(f"{_fmt(mae['values'][row].get(c), 4):>12}" for c in MAE_COLUMNS)
        lines.append(f"{row:<6}{cells}   {count:>7}")
    return lines


def _score_lines(scores: dict) -> list[str]:
    lines = ["Make-probability scores (misclassification by cross-validation)"]
    lines.append(f"{'row':<12}{'miscl.':>10}{'brier':>10}{'logloss':>10}{'n':>8}")
    for row, report in scores["table"].items():
        if report is None:
            lines.append(f"{row:<12}could not be scored")
            continue
        lines.append(
            f"{row:<12}{report['misclassification']:>10.3f}{report['brier']:>10.3f}"
            f"{report['logloss']:>10.3f}{report['n']:>8}"
        )
    return lines


def _summary_text(summary: dict) -> str:
    fit = summary["fit"]
    lines = [f"shotlab report (fit method {fit['method']})", ""]
    for dataset, methods in fit["datasets"].items():
        for method, counts in methods.items():
            reasons = ", ".join(f"{k}={v}" for k, v in counts["reasons"].items()) or "none"
            lines.append(
                f"{dataset}/{method}: {counts['valid']} valid, {counts['invalid']} invalid "
                f"of {counts['total']} (depth sd {_fmt(counts['depth_sd'], 2)} in; "
                f"exclusions: {reasons})"
            )
    fills = summary["fill_accounting"]
    lines.append(f"probabilities: {fills['model']} model, {fills['fill']} fill of {fills['total']}")
    lines.append("")
    lines += _score_lines(summary["scores"])
    lines.append("")
    for shot_class, gmz in summary["gmz"].items():
        if gmz["rate"] is None:
            lines.append(f"GMZ {shot_class}: no shots in zone")
        else:
            lines.append(f"GMZ {shot_class}: {gmz['rate']:.3f} over {gmz['n_in_zone']} shots")
    lines.append("")
    lines += _mae_lines(summary["mae_table"])
    lines.append("")
    for shot_class, entry in summary["discrimination"].items():
        lines.append(
            f"discrimination {shot_class}: raw {_fmt(entry.get('raw'))}, "
            f"rb {_fmt(entry.get('rb'))} ({entry['n_players']} players)"
        )
    for shot_class, entry in summary["rank_stability"].items():
        lines.append(
            f"rank stability {shot_class}: raw {_fmt(entry.get('raw'))}, "
            f"rb {_fmt(entry.get('rb'))} ({entry['n_players']} players)"
        )
    if summary.get("oracle"):
        oracle = summary["oracle"]
        lines.append(
            "MSE vs true skill: "
            + ", ".join(f"{k[4:]} {oracle[k]:.5f}" for k in sorted(oracle) if k.startswith("mse_"))
        )
    return "\n".join(lines) + "\n"


def _figure_tables(scores: dict, evaluation: dict) -> dict[str, pd.DataFrame]:
    sd_rows = evaluation["sd"]["players"]
    errors = [
        {"shot_class": shot_class, **row}
        for shot_class, rows in evaluation["player_errors"].items()
        for row in rows
    ]
    rmse = evaluation["rmse_curve"]
    curves = rmse["curves"] or {}
    rmse_rows = [
        {"fraction": fraction, **{kind: values[i] for kind, values in curves.items()}}
        for i, fraction in enumerate(rmse["fractions"])
    ]
    surface = [
        {"shot_class": shot_class, **row}
        for shot_class, profile in scores["profiles"].items()
        for row in profile["surface"]
    ]
    angle = [
        {"shot_class": shot_class, **row}
        for shot_class, profile in scores["profiles"].items()
        for row in profile["angle_profile"]
    ]
    return {
        "fig4_sd.csv": pd.DataFrame(
            sd_rows, columns=["player_id", "n", "sd_raw", "sd_rb", "sd_simulated_rb"]
        ),
        "fig5_errors.csv": pd.DataFrame(
            errors,
            columns=[
                "shot_class",
                "player_id",
                "n_first",
                "n_second",
                "target",
                "err_raw",
                "err_rb",
                "err_shrunk_rb",
            ],
        ),
        "fig6_rmse.csv": pd.DataFrame(rmse_rows, columns=["fraction", *curves]),
        "profile_surface.csv": pd.DataFrame(
            surface, columns=["shot_class", "depth", "left_right", "p_make"]
        ),
        "profile_angle.csv": pd.DataFrame(
            angle, columns=["shot_class", "angle_lo", "angle_hi", "mean_p", "n"]
        ),
    }


def emit_report(artifact_dir: Path) -> dict[str, Path]:
    """
    Human-readable summary, summary JSON and plot-ready CSVs from a finished
    run's artifacts.
    :param artifact_dir (Path): output directory of a pipeline run.
    :raises MissingArtifact: naming the stage whose output is absent.
    """
    store = ArtifactStore(artifact_dir)
    fit = store.get_json("fit", "factors", "summary.json")
    store.require("shotprob", "model", "probabilities.csv")
    scores = store.get_json("shotprob", "model", "scores.json")
    estimates = store.get_json("estimate", "estimates", "estimates.json")
    evaluation = store.get_json("evaluate", "evaluation", "evaluation.json")

    summary = {
        "fit": {"method": fit["method"], "datasets": fit["datasets"]},
        "fill_accounting": scores["fill_accounting"],
        "scores": {"table": scores["table"], "per_class": scores["per_class"]},
        "gmz": scores["gmz"],
        "n_players": estimates["n_players"],
        "mae_table": evaluation["mae_table"],
        "discrimination": evaluation["discrimination"],
        "rank_stability": evaluation["rank_stability"],
        "rmse_curve": evaluation["rmse_curve"],
        "sd_summary": evaluation["sd"]["summary"],
        "oracle": evaluation.get("oracle"),
    }

    written = {
        "summary.json": store.put_json(summary, "report", "summary.json"),
    }
    text_path = store.path("report", "summary.txt")
    text_path.write_text(_summary_text(summary), encoding="utf-8")
    written["summary.txt"] = text_path
    for name, table in _figure_tables(scores, evaluation).items():
        written[name] = write_csv(table, store.path("report", name))
    logger.info(f"report written to {store.path('report')}")
    return written


class EmitReport(BaseStage):
    stage_name = "report"

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def emit_report(self):
        written = emit_report(self.config.out_dir)
        self.event["report"] = sorted(written)
        return self.finish(None)
