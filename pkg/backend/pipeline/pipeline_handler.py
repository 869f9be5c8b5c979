# Built-in imports
from pathlib import Path
from typing import Optional, Sequence

# Own imports
from common.config import PipelineConfig
from common.exceptions import StageFailed
from common.logger import custom_logger
from pipeline.__init__ import *  # noqa NOSONAR
from pipeline.definition import FAILURE_STAGE, PIPELINE_DEFINITION, stage_by_name


logger = custom_logger()


def run_stage(event: dict, class_name: str, method_name: str) -> dict:
    """
    Instantiates a stage class by name and executes one of its methods.
    :param event (dict): run event, carrying the resolved config.
    :param class_name (str): stage class exported by the pipeline package.
    :param method_name (str): stage method to execute.
    """
    try:
        # Dynamically load and initialize the target class at runtime
        target_class = globals()[class_name]
        target_instance = target_class(event)
        logger.debug(f"dynamically loaded target_instance: {target_instance}")

        # Dynamically load and execute the method at runtime
        target_method = getattr(target_instance, method_name)
        return target_method()
    except Exception as e:
        logger.exception(f"Error while executing stage {class_name}.{method_name}: {e}")
        logger.exception(f"Stage event was: {event}")
        raise e


def run_pipeline(config: PipelineConfig, stages: Optional[Sequence[str]] = None) -> Path:
    """
    Runs the named stages (all of them by default) in pipeline order, after
    validating the config. Fails fast: the first stage error runs the failure
    stage and is re-raised as StageFailed.
    :return (Path): artifact directory of the run.
    """
    selected = [s["name"] for s in PIPELINE_DEFINITION] if stages is None else list(stages)
    for name in selected:
        stage_by_name(name)
    ordered = [s for s in PIPELINE_DEFINITION if s["name"] == "config" or s["name"] in selected]

    event: dict = {"config": config.model_dump(mode="json"), "run_key": config.run_key()}
    logger.append_keys(run_key=event["run_key"])
    for stage in ordered:
        try:
            event = run_stage(event, stage["class_name"], stage["method_name"])
        except Exception as error:
            event.update({"failed_stage": stage["name"], "error_message": str(error)})
            run_stage(event, FAILURE_STAGE["class_name"], FAILURE_STAGE["method_name"])
            raise StageFailed(
                stage["name"], str(error), shot_id=getattr(error, "shot_id", None)
            ) from error
    logger.info(f"stages completed: {event.get('completed_stages', [])}")
    return config.out_dir
