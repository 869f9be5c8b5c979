"""Ordered stages of a full run, each a class and the method that executes it."""

PIPELINE_DEFINITION = [
    {"name": "config", "class_name": "ValidateConfig", "method_name": "validate_config"},
    {"name": "simulate", "class_name": "Simulate", "method_name": "simulate"},
    {"name": "ingest", "class_name": "IngestTracking", "method_name": "ingest_tracking"},
    {"name": "fit", "class_name": "FitTrajectories", "method_name": "fit_trajectories"},
    {"name": "shotprob", "class_name": "TrainModel", "method_name": "train_model"},
    {"name": "estimate", "class_name": "Estimate", "method_name": "estimate"},
    {"name": "evaluate", "class_name": "Evaluate", "method_name": "evaluate"},
    {"name": "report", "class_name": "EmitReport", "method_name": "emit_report"},
    {"name": "success", "class_name": "Success", "method_name": "process_success"},
]

FAILURE_STAGE = {"name": "failure", "class_name": "Failure", "method_name": "process_failure"}


def stage_by_name(name: str) -> dict:
    for stage in PIPELINE_DEFINITION:
        if stage["name"] == name:
            return stage
    raise KeyError(f"unknown stage {name!r}")
