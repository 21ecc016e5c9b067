"""
Entry point for the Markoff triple verifier.
Writes the report to stdout (or --output) and logs to stderr.
"""
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# Add the project root directory to the path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from config.app_config import init_config
from core.exceptions import BadInput, MarkoffError, UnknownIdentity
from core.models import CheckRecord
from core.observable import CHECK_COMPLETED, SUITE_STARTED
from services.verification_service import SUITES, VerificationService
from utils.export import ExportUtils
from utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FORMATS = ('jsonl', 'table')


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--bound', type=_positive_int, default=None,
                        help="suite bound (largest member, q or n depending on the suite)")
    common.add_argument('--format', choices=FORMATS, default=None, help="report format on stdout")
    common.add_argument('--output', default=None,
                        help="write the report to a file; .jsonl, .txt/.md or .xlsx")
    common.add_argument('--jobs', type=_positive_int, default=None, help="worker processes")
    common.add_argument('--config', default=None, help="JSON config file")
    common.add_argument('-v', '--verbose', action='store_true', help="log at INFO")
    common.add_argument('--debug', action='store_true', help="log at DEBUG")

    parser = argparse.ArgumentParser(prog='markoff-verifier',
                                     description="Exact verification of Markoff triple identities")
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    for name in SUITES + ('all',):
        sub = commands.add_parser(name, parents=[common])
        if name == 'verify-identities':
            sub.add_argument('--ids', default=None, help="comma-separated identity ids")
    return parser


def parse_ids(text: Optional[str]) -> Optional[List[str]]:
    if not text:
        return None
    ids = [part.strip() for part in text.split(',') if part.strip()]
    if not ids:
        raise BadInput(f"no identity ids in {text!r}")
    return ids


def log_record(record: CheckRecord):
    logger.debug(f"{record.cmd} {record.check} {record.subject}: {'pass' if record.passed else 'FAIL'}")


def log_suite(suite: str, params: dict):
    logger.debug(f"suite {suite} {params}")


def check_dependencies(output: Optional[str]) -> bool:
    """openpyxl is needed only for .xlsx output"""
    if output and ExportUtils.format_for_path(output) == 'xlsx':
        try:
            import openpyxl  # noqa: F401
        except ImportError:
            logger.error("openpyxl is not installed. Excel export is unavailable.")
            return False
    return True


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parses argv, runs the suite and returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.config and not os.path.exists(args.config):
        setup_logging('WARNING')
        logger.error(f"Config file not found: {args.config}")
        return EXIT_USAGE

    config = init_config(args.config)
    config.apply_overrides({
        'verification.jobs': args.jobs,
        'output.format': args.format,
    })
    if args.debug:
        level = 'DEBUG'
    elif args.verbose:
        level = 'INFO'
    else:
        level = config.get_log_level()
    setup_logging(level)

    fmt = config.get('output.format')
    if fmt not in FORMATS:
        logger.error(f"output.format must be one of {FORMATS}, got {fmt!r}")
        return EXIT_USAGE
    if not check_dependencies(args.output):
        return EXIT_FAILED

    try:
        service = VerificationService(config)
        service.add_observer(SUITE_STARTED, log_suite)
        service.add_observer(CHECK_COMPLETED, log_record)
        ids = parse_ids(getattr(args, 'ids', None))
        report = service.run(args.command, args.bound, ids)
    except (BadInput, UnknownIdentity) as e:
        logger.error(f"Bad arguments: {e}")
        return EXIT_USAGE
    except MarkoffError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILED
    except ValueError as e:
        logger.error(f"Bad configuration: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Fatal error in {args.command}: {e}", exc_info=True)
        return EXIT_FAILED

    if args.output:
        if not ExportUtils.export_to_file(report, args.output, ExportUtils.format_for_path(args.output, fmt)):
            return EXIT_FAILED
        logger.info(f"Report written to {args.output}")
    else:
        ExportUtils.write(report, sys.stdout, fmt)
    return EXIT_OK if report.passed else EXIT_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
