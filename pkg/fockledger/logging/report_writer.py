import csv
import io
import json
import logging
import os

import jsonlines
import yaml

from fockledger.meta import Meta

logger = logging.getLogger(__name__)

REPORT_FORMATS = ["json", "jsonl", "csv", "md"]

CSV_FIELDS = [
    "claim_id",
    "anchor",
    "passed",
    "skip_reason",
    "measured",
    "expected",
    "tolerance",
    "runtime_ms",
    "error",
]


def _cell(value):
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return "" if value is None else value


def _status(result):
    if result["skip_reason"] is not None:
        return "skipped"
    return "passed" if result["passed"] else "FAILED"


class ReportWriter(object):
    """Writes run artifacts: the effective config, the command line and the
    verification report."""

    def __init__(self):
        self.config = None
        self.report = None

    def add_config(self, config):
        """Log config.

        :param config: The config
        :type config: dict
        """

        self.config = config

    def add_report(self, report):
        """Log a verification report as built by ``verifier.summarize``.

        :param report: The report
        :type report: dict
        """

        self.report = report

    def write_config(self, config_filename="config.yaml"):
        """Dump the config to the run directory.

        :param config_filename: The config filename, defaults to "config.yaml"
        :type config_filename: str, optional
        """

        config_path = os.path.join(Meta.log_path, config_filename)
        with open(config_path, "w") as yml:
            yaml.dump(self.config, yml, default_flow_style=False, allow_unicode=True)

    def write_command(self, cmd, cmd_filename="cmd.txt"):
        with open(os.path.join(Meta.log_path, cmd_filename), "w") as f:
            f.write(cmd + "\n")

    def render(self, format="json"):
        """Render the report as text.

        :param format: One of json, jsonl, csv, md.
        :type format: str
        :rtype: str
        """

        if format not in REPORT_FORMATS:
            raise ValueError(f"Unrecognized report format: {format}")
        return getattr(self, f"_render_{format}")()

    def write_report(self, path=None, format="json"):
        """Write the rendered report to ``path``, or to the run directory.

        :return: The path written.
        :rtype: str
        """

        if path is None:
            path = os.path.join(Meta.log_path, f"report.{format}")
        with open(path, "w", newline="") as f:
            f.write(self.render(format))
        logger.info(f"Writing report to {path}")
        return path

    def _render_json(self):
        return json.dumps(self.report, indent=2) + "\n"

    def _render_jsonl(self):
        buffer = io.StringIO()
        with jsonlines.Writer(buffer) as writer:
            writer.write_all(self.report["results"])
        return buffer.getvalue()

    def _render_csv(self):
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for result in self.report["results"]:
            writer.writerow({key: _cell(result[key]) for key in CSV_FIELDS})
        return buffer.getvalue()

    def _render_md(self):
        report = self.report
        lines = [
            "# fockledger verification report",
            "",
            f"seed `{report['seed']}`, tail_tol `{report['tail_tol']}`: "
            f"{report['passed']} passed, {report['failed']} failed, "
            f"{report['skipped']} skipped",
            "",
            "| claim | status | measured | expected | tolerance | relation |",
            "|---|---|---|---|---|---|",
        ]
        for result in report["results"]:
            cells = [
                f"`{result['claim_id']}`",
                _status(result),
                json.dumps(result["measured"]),
                json.dumps(result["expected"]),
                str(result["tolerance"]),
                result["anchor"].replace("|", "\\|"),
            ]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
