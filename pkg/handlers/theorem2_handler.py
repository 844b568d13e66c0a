import logging

from handlers.base_handler import BaseHandler
from services.sw_classes import theorem2_pairing
from utils.helpers import is_power_of_two

logger = logging.getLogger(__name__)


class Theorem2Handler(BaseHandler):
    """Computes the flag-manifold pairing behind the projective-space bound."""

    command = "verify-theorem2"

    def handle(self, run_config):
        results, findings = [], []
        all_agree = True
        for k in run_config.k_values:
            for r in run_config.r_values:
                if r > k:
                    findings.append(f"skipped k={k}, r={r}: r > k, Λ({k},{r}) is empty")
                    continue
                report = theorem2_pairing(k, r, config=self.config)
                results.append(report.model_dump(mode="json"))
                if not report.agrees:
                    all_agree = False
                    findings.append(f"k={k}, r={r}: pairing methods disagree ({report.methods})")
                if is_power_of_two(k) and report.value == 0:
                    findings.append(
                        f"k={k}, r={r}: pairing is 0 although k is a power of 2 and r <= k; "
                        f"the claimed nonvanishing does not hold for this computation"
                    )
                if report.target_degree != report.class_degree:
                    findings.append(
                        f"k={k}, r={r}: dim Λ = {report.target_degree} while the class degree "
                        f"kr - r(r-1)/2 = {report.class_degree}; the pairing is taken in degree dim Λ"
                    )
        return self.emit(run_config, results, findings, ok=all_agree)
