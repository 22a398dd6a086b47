#!/usr/bin/env python3
"""
Report command: one verdict table over every command summary present.
"""

import logging
from typing import Any, Dict, List

import pandas as pd

from ..artifacts import SUMMARIES, pipeline_order
from ..errors import ArtifactError
from .context import RunContext

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["command", "present", "verdict", "passed", "n_warnings", "run_id"]


def run_report(ctx: RunContext) -> Dict[str, Any]:
    """
    Aggregate the JSON summaries in pipeline order.

    Missing summaries appear as rows with present = False; a summary from a
    different configuration is flagged in the warnings.

    Args:
        ctx: Run context

    Returns:
        Dict[str, Any]: Content of report.json
    """
    rows: List[Dict[str, Any]] = []
    warnings: List[str] = []
    for command in pipeline_order():
        name = SUMMARIES.get(command)
        if name is None:
            continue
        if not ctx.store.exists(name):
            rows.append({"command": command, "present": False, "verdict": "missing", "passed": False,
                         "n_warnings": 0, "run_id": ""})
            continue
        try:
            summary = ctx.store.read_json(name)
        except ArtifactError as e:
            logger.warning(f"Skipping unreadable summary {name}: {e}")
            warnings.append(f"{name} is unreadable")
            continue
        if summary.get("config_hash") != ctx.config_hash:
            warnings.append(f"{name} was produced by a different configuration")
        rows.append({
            "command": command,
            "present": True,
            "verdict": summary.get("verdict", "unknown"),
            "passed": bool(summary.get("passed", False)),
            "n_warnings": len(summary.get("warnings", [])),
            "run_id": summary.get("run_id", ""),
        })

    present = [row for row in rows if row["present"]]
    if not present:
        warnings.append("no command summaries found")
    ctx.store.write_frame("report.csv", pd.DataFrame(rows, columns=REPORT_COLUMNS))
    report = ctx.summary(
        "report",
        bool(present) and all(row["passed"] for row in present),
        warnings,
        commands=rows,
    )
    ctx.store.write_json("report.json", report)
    logger.info(f"Report over {len(present)} summaries: {report['verdict']}")
    return report
