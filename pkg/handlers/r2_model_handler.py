import logging

from handlers.base_handler import BaseHandler
from services.sw_classes import theorem1_r2_check

logger = logging.getLogger(__name__)


class R2ModelHandler(BaseHandler):
    """Checks w(ψ̃)^k = 1 and the top pairing in H^*(B(R^k, 2)) = Z2[a]/(a^k)."""

    command = "verify-r2-model"

    def handle(self, run_config):
        results, findings = [], []
        ok = True
        for k in run_config.k_values:
            report = theorem1_r2_check(k)
            row = report.model_dump(mode="json")
            row["passes"] = report.passes
            results.append(row)
            if report.k_is_power_of_two and not report.passes:
                ok = False
                findings.append(f"k={k}: power identity {report.power_identity}, top pairing {report.top_pairing}")
        return self.emit(run_config, results, findings, ok=ok)
