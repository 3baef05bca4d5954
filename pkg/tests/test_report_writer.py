import csv
import io
import json
import logging
import os

import pytest
import yaml

import fockledger
from fockledger.logging import REPORT_FORMATS, ReportWriter
from fockledger.meta import Meta
from fockledger.verifier import ClaimResult, summarize


def make_writer():
    results = [
        ClaimResult("a.identity", "x | y", [1.0, 2.0], [1.0, 2.0], 1e-9, True, 1),
        ClaimResult("b.limit", "z", 0.5, 0.4, 1e-2, False, 2),
        ClaimResult("c.overflow", "w", None, None, 1e-9, None, 0, skip_reason="too big"),
    ]
    writer = ReportWriter()
    writer.add_report(summarize(results, 5, 1e-12))
    return writer


def test_render_every_format():
    writer = make_writer()

    assert json.loads(writer.render("json"))["failed"] == 1
    lines = writer.render("jsonl").splitlines()
    assert [json.loads(line)["claim_id"] for line in lines] == [
        "a.identity",
        "b.limit",
        "c.overflow",
    ]
    rows = list(csv.DictReader(io.StringIO(writer.render("csv"))))
    assert rows[0]["measured"] == "[1.0, 2.0]"
    assert rows[2]["skip_reason"] == "too big"

    text = writer.render("md")
    assert "seed `5`, tail_tol `1e-12`: 1 passed, 1 failed, 1 skipped" in text
    assert "| `b.limit` | FAILED |" in text
    assert "| `c.overflow` | skipped |" in text
    assert "x \\| y" in text


def test_unrecognized_format():
    with pytest.raises(ValueError, match="Unrecognized report format"):
        make_writer().render("xml")


def test_run_directory_artifacts(tmp_path):
    fockledger.init(log_dir=str(tmp_path), level=logging.WARNING)
    writer = make_writer()
    writer.add_config(Meta.config)
    writer.write_config()
    writer.write_command("fockledger verify")

    with open(os.path.join(Meta.log_path, "config.yaml")) as f:
        assert yaml.safe_load(f)["fock_config"]["tail_tol"] == 1e-12
    with open(os.path.join(Meta.log_path, "cmd.txt")) as f:
        assert f.read() == "fockledger verify\n"

    for format in REPORT_FORMATS:
        path = writer.write_report(format=format)
        assert path == os.path.join(Meta.log_path, f"report.{format}")
        with open(path, newline="") as f:
            assert f.read() == writer.render(format)
