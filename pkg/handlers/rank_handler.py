import logging

from handlers.base_handler import BaseHandler
from services.config_rank import ConfigRankService
from services.moment_verifier import FourierCurve

logger = logging.getLogger(__name__)


class RankHandler(BaseHandler):
    """Rank of τ(x̂) on the moment curve, for given angles or a Monte-Carlo sample."""

    command = "rank"

    def __init__(self, config, report_writer):
        super().__init__(config, report_writer)
        self.rank_service = ConfigRankService(config)

    def handle(self, run_config):
        if run_config.rank_tolerance is not None:
            self.rank_service.rank_tolerance = run_config.rank_tolerance
        results, findings = [], []
        ok = True
        for r in run_config.r_values:
            if run_config.angles is not None:
                report = self.rank_service.tau_report_for_angles(FourierCurve.moment(r), run_config.angles)
                results.append(report.model_dump(mode="json"))
                if report.in_omega:
                    ok = False
                    findings.append(f"r={r}: τ has rank {report.rank} < {report.required}, the configuration lies in Ω")
            else:
                summary = self.rank_service.genericity_sample(r, run_config.trials, run_config.seed)
                results.append(summary.model_dump(mode="json"))
                if summary.omega_hits:
                    ok = False
                    findings.append(f"r={r}: {summary.omega_hits} of {summary.trials} sampled configurations lie in Ω")
        return self.emit(run_config, results, findings, ok=ok)
