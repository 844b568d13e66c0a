import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import orjson
import pandas as pd

from models.run_config import AuditReport

logger = logging.getLogger(__name__)


class ReportWriter:
    """Serializes audit reports as JSON, CSV or a markdown table."""

    JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY

    def __init__(self, output_format: str = "json", out: Optional[str] = None):
        """
        Args:
            output_format: "json", "csv" or "md"
            out: Destination path; standard output when None
        """
        self.output_format = output_format
        self.out = Path(out) if out else None

    def to_json(self, report: AuditReport) -> bytes:
        return orjson.dumps(report.model_dump(mode="json"), option=self.JSON_OPTIONS) + b"\n"

    def to_frame(self, results: List[Dict[str, Any]]) -> pd.DataFrame:
        """One row per result; hypothesis lists become one column per condition."""
        rows = []
        for result in results:
            row = dict(result)
            for hypothesis in row.pop("hypotheses", None) or []:
                row[f"hypothesis: {hypothesis['condition']}"] = hypothesis["satisfied"]
            rows.append(row)
        frame = pd.json_normalize(rows, sep=".")
        for column in frame.columns:
            if frame[column].map(lambda v: isinstance(v, list)).any():
                frame[column] = frame[column].map(
                    lambda v: " ".join(str(x) for x in v) if isinstance(v, list) else v
                )
        return frame

    def render(self, report: AuditReport) -> bytes:
        if self.output_format == "json":
            return self.to_json(report)
        frame = self.to_frame(report.results)
        if self.output_format == "csv":
            return frame.to_csv(index=False).encode("utf-8")
        text = frame.to_markdown(index=False) if not frame.empty else "_no results_"
        if report.findings:
            text += "\n\nFindings:\n" + "\n".join(f"- {f}" for f in report.findings)
        return (text + "\n").encode("utf-8")

    def write(self, report: AuditReport) -> bool:
        """Write the rendered report; returns False if the destination could not be written."""
        payload = self.render(report)
        if self.out is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
            return True
        try:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            self.out.write_bytes(payload)
            logger.info(f"Wrote {self.output_format} report for '{report.command}' to {self.out}")
            return True
        except OSError as e:
            logger.error(f"Error saving to {self.out}: {e}")
            return False
