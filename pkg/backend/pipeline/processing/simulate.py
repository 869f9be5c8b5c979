# Own imports
from common.logger import custom_logger
from pipeline.artifacts import DATASETS, dataset_paths
from pipeline.base_stage import BaseStage
from simulator.season import gen_dataset, write_season


logger = custom_logger()


class Simulate(BaseStage):
    """Writes synthetic train and predict seasons when no real data is configured."""

    stage_name = "simulate"
    config_sections = ("simulation",)

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def simulate(self):
        if self.config.train is not None:
            self.logger.info("train data configured, nothing to simulate")
            return self.finish(None)

        outputs = []
        for dataset in DATASETS:
            paths = dataset_paths(self.config, dataset)
            outputs += [paths.tracking, paths.shots]
        key = self.cached([], outputs)
        if key is None:
            return self.event

        for offset, dataset in enumerate(DATASETS):
            # Disjoint seasons: the predict season uses the next seed
            sim_cfg = self.config.simulation.model_copy(
                update={"seed": self.config.simulation.seed + offset}
            )
            season = gen_dataset(sim_cfg, jobs=self.jobs)
            out_dir = dataset_paths(self.config, dataset).shots.parent
            write_season(season, out_dir)
            self.logger.info(
                f"simulated {dataset} season: {len(season.shots)} shots, "
                f"{len(season.tracking)} tracking rows"
            )
        return self.finish(key)
