################################################################################
#  This __init__.py loads every stage class of the pipeline, so the handler can
#  resolve them at runtime from their names with "globals" and "getattr".
################################################################################

# Validation (Prepare)
from pipeline.utils.validate_config import ValidateConfig  # noqa

# Inputs
from pipeline.processing.simulate import Simulate  # noqa
from pipeline.ingest.ingest_tracking import IngestTracking  # noqa

# Processing
from pipeline.processing.fit_trajectories import FitTrajectories  # noqa
from pipeline.processing.train_model import TrainModel  # noqa
from pipeline.processing.estimate import Estimate  # noqa
from pipeline.processing.evaluate import Evaluate  # noqa

# Saving
from pipeline.save.emit_report import EmitReport  # noqa

# Utils
from pipeline.utils.success import Success  # noqa
from pipeline.utils.failure import Failure  # noqa
