import logging
from typing import Any, Dict, List

from decorators.validation import EXIT_CHECK_FAILED, EXIT_OK
from models.moment import Tolerances
from models.run_config import AuditReport, RunConfig

logger = logging.getLogger(__name__)


class BaseHandler:
    """Base class for all command handlers of the neighborliness audit CLI."""

    command = ""

    def __init__(self, config, report_writer):
        self.config = config
        self.report_writer = report_writer
        self.logger = logger

    def handle(self, run_config: RunConfig) -> int:
        raise NotImplementedError

    def tolerances(self, run_config: RunConfig) -> Tolerances:
        """Module defaults from Config with the command-line overrides applied."""
        tolerances = Tolerances.from_config(self.config)
        overrides = {"tol_eq": run_config.tol_eq, "tol_curv": run_config.tol_curv}
        return tolerances.model_copy(update={k: v for k, v in overrides.items() if v is not None})

    def emit(self, run_config: RunConfig, results: List[Dict[str, Any]], findings: List[str], ok: bool) -> int:
        """
        Write the report and translate the outcome into an exit code.
        A report that cannot be written counts as a failed run.
        """
        report = AuditReport(
            command=run_config.command,
            config=run_config.model_dump(mode="json"),
            results=results,
            findings=findings,
        )
        if not self.report_writer.write(report):
            return EXIT_CHECK_FAILED
        self.logger.info(f"{run_config.command}: {len(results)} results, {len(findings)} findings, ok={ok}")
        return EXIT_OK if ok else EXIT_CHECK_FAILED
