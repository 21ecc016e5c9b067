import json
import logging
import sys
from typing import List, Optional

from tabulate import tabulate

from core.models import CheckRecord, Report

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
TABLE_HEADERS = ('Command', 'Subject', 'Check', 'Pass', 'Detail')
DETAIL_WIDTH = 80


def setup_logging(level: str = 'WARNING') -> logging.Logger:
    """Configure logging to stderr only; stdout carries the report"""
    logger = logging.getLogger()
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        numeric = logging.WARNING
    console_handler.setLevel(numeric)
    logger.setLevel(numeric)
    logger.addHandler(console_handler)

    # sympy is noisy at DEBUG
    logging.getLogger('sympy').setLevel(max(numeric, logging.INFO))

    logger.info("Logging initialized")
    return logger


def _short_detail(record: CheckRecord, width: int = DETAIL_WIDTH) -> str:
    if not record.detail:
        return "-"
    text = json.dumps(record.detail, ensure_ascii=False, sort_keys=True, default=str)
    return text if len(text) <= width else text[:width - 3] + "..."


def format_record_rows(records: List[CheckRecord]) -> List[List[str]]:
    return [[r.cmd, r.subject, r.check, "pass" if r.passed else "FAIL", _short_detail(r)]
            for r in records]


def format_report_table(report: Report, title: Optional[str] = None) -> str:
    """Format a report as a pipe-delimited table followed by a summary line."""
    if title is None:
        title = f"{report.command} {report.params}" if report.params else report.command
    header = title
    table = tabulate(format_record_rows(report.records), headers=TABLE_HEADERS, tablefmt="github")
    failures = len(report.failures())
    status = "PASS" if report.passed else "FAIL"
    return (f"{header}\n{'=' * len(header)}\n\n{table}\n\n"
            f"{status}: {len(report.records)} records, {failures} failures\n")
