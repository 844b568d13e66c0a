import logging

from decorators.validation import validated_input
from handlers.bounds_handler import BoundsHandler
from handlers.lr_config_handler import LRConfigHandler
from handlers.moment_handler import MomentHandler
from handlers.r2_model_handler import R2ModelHandler
from handlers.rank_handler import RankHandler
from handlers.theorem2_handler import Theorem2Handler
from models.run_config import RunConfig
from utils.report_writer import ReportWriter

logger = logging.getLogger(__name__)

HANDLERS = (BoundsHandler, Theorem2Handler, R2ModelHandler, MomentHandler, RankHandler, LRConfigHandler)


class CommandProcessor:
    """Routes a validated RunConfig to the handler of its subcommand."""

    def __init__(self, config):
        self.config = config
        logger.info("CommandProcessor initialized.")

    @validated_input
    def process(self, options: dict) -> int:
        """Validate raw options and run the matching handler; returns the exit code."""
        run_config = RunConfig(**options)
        report_writer = ReportWriter(run_config.output_format, run_config.out)
        handler = self._route_to_handler(run_config.command, report_writer)
        logger.info(f"Dispatching '{run_config.command}' to {type(handler).__name__}")
        return handler.handle(run_config)

    def _route_to_handler(self, command, report_writer):
        for handler_class in HANDLERS:
            if handler_class.command == command:
                return handler_class(self.config, report_writer)
        raise ValueError(f"No handler for command '{command}'")
