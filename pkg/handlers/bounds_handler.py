import logging

from handlers.base_handler import BaseHandler
from services.bounds import bound_table

logger = logging.getLogger(__name__)


class BoundsHandler(BaseHandler):
    """Best lower bound on the embedding dimension for every (k, r) in the ranges."""

    command = "bounds"

    def handle(self, run_config):
        certificates = bound_table(
            run_config.k_values, run_config.r_values, run_config.manifold, run_config.audit_pairing,
            config=self.config,
        )
        findings = []
        for c in certificates:
            if c.pairing is not None and not c.pairing_supports:
                findings.append(
                    f"k={c.k}, r={c.r}: the theorem2 bound is selected but the computed pairing is "
                    f"{c.pairing.value}, so the characteristic-class argument is not confirmed"
                )
        results = [c.model_dump(mode="json") for c in certificates]
        return self.emit(run_config, results, findings, ok=True)
