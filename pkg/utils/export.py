"""
Report export utilities
"""
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, TextIO

from core.models import Report
from utils.logger import format_report_table

logger = logging.getLogger(__name__)

EXTENSION_FORMATS = {'.jsonl': 'jsonl', '.json': 'jsonl', '.txt': 'table', '.md': 'table', '.xlsx': 'xlsx'}
XLSX_COLUMNS = ('cmd', 'subject', 'check', 'pass', 'detail')


class ExportUtils:
    """Report export utilities"""

    @staticmethod
    def report_lines(report: Report) -> List[str]:
        """One JSON object per record, then the summary line"""
        rows: List[Dict[str, Any]] = [r.to_dict() for r in report.records]
        rows.append(report.summary())
        return [json.dumps(row, ensure_ascii=False, sort_keys=True, default=str) for row in rows]

    @staticmethod
    def write_jsonl(report: Report, stream: TextIO):
        for line in ExportUtils.report_lines(report):
            stream.write(line + "\n")

    @staticmethod
    def write_table(report: Report, stream: TextIO):
        stream.write(format_report_table(report))

    @staticmethod
    def write(report: Report, stream: TextIO, fmt: str = 'jsonl'):
        if fmt == 'table':
            ExportUtils.write_table(report, stream)
        else:
            ExportUtils.write_jsonl(report, stream)

    @staticmethod
    def format_for_path(filepath: str, default: str = 'jsonl') -> str:
        """Формат по расширению файла"""
        return EXTENSION_FORMATS.get(Path(filepath).suffix.lower(), default)

    @staticmethod
    def export_to_file(report: Report, filepath: str, fmt: str = None) -> bool:
        """Exports a report; the extension picks the format unless fmt is given"""
        fmt = fmt or ExportUtils.format_for_path(filepath)
        if fmt == 'xlsx':
            return ExportUtils.export_to_excel(report, filepath)
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                ExportUtils.write(report, f, fmt)
            return True
        except Exception as e:
            logger.error(f"Error exporting to {filepath}: {e}")
            return False

    @staticmethod
    def export_to_excel(report: Report, filepath: str) -> bool:
        """Лист 'records' со строками отчёта и лист 'summary'"""
        try:
            from openpyxl import Workbook
            from openpyxl.styles import Font
        except ImportError:
            logger.error("openpyxl is not installed. Excel export is unavailable.")
            return False

        try:
            wb = Workbook()
            ws = wb.active
            ws.title = "records"
            ws.append(list(XLSX_COLUMNS))
            for cell in ws[1]:
                cell.font = Font(bold=True)
            for record in report.records:
                row = record.to_dict()
                row['detail'] = json.dumps(row['detail'], ensure_ascii=False, sort_keys=True, default=str)
                ws.append([row[key] for key in XLSX_COLUMNS])

            summary = wb.create_sheet("summary")
            info = report.summary()
            summary.append(['command', report.command])
            summary.append(['pass', info['pass']])
            summary.append(['records', len(report.records)])
            summary.append(['failures', len(report.failures())])
            for key, value in report.params.items():
                summary.append([key, str(value)])

            wb.save(filepath)
            return True
        except Exception as e:
            logger.error(f"Error exporting to Excel: {e}")
            return False

    @staticmethod
    def generate_filename(prefix: str, extension: str = "jsonl") -> str:
        """Generates a filename with a timestamp"""
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return f"{prefix}_{timestamp}.{extension}"
