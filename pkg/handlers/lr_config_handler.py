import logging

import numpy as np

from handlers.base_handler import BaseHandler
from services.config_rank import build_composite_configuration, build_lr_configuration, random_directions

logger = logging.getLogger(__name__)


class LRConfigHandler(BaseHandler):
    """Dumps iterated-antipodal configurations with seeded random directions."""

    command = "lr-config"

    def handle(self, run_config):
        rng = np.random.default_rng(run_config.seed)
        results = []
        for k in run_config.k_values:
            if run_config.s is not None:
                directions = random_directions(k, 2 ** run_config.s - 1, rng)
                configurations = [build_lr_configuration(k, run_config.s, run_config.epsilon, directions)]
            else:
                configurations = [
                    build_composite_configuration(k, r, run_config.epsilon, rng=rng)
                    for r in run_config.r_values
                ]
            results.extend(c.model_dump(mode="json") for c in configurations)
        return self.emit(run_config, results, [], ok=True)
