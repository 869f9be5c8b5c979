# Only the config here: common.config imports it while still initializing
from simulator.config import SimConfig  # noqa
