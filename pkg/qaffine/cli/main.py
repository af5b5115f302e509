# qaffine/cli/main.py

"""
Command-line entry point of qaffine.

    qaffine verify-r [--rmatrix PATH]
    qaffine verify-rll --cutoff 4
    qaffine verify-gauss --cutoff 4
    qaffine verify-suites --suite k-commutation,drinfeld [--mutations --seed 3]
    qaffine verify-suites --suite-file my.txt
    qaffine degenerate --suite drinfeld --compare
    qaffine gauss-print --format json

Exit codes: 0 when every selected check passes, 1 when a check fails, 2 on
configuration, parse or arithmetic errors and on runs where every check was
skipped.
"""

import argparse
import logging
import sys
from typing import List, Optional

from qaffine.cli.config import COMMANDS, FORMATS, RunConfig
from qaffine.cli.runner import VerificationRunner
from qaffine.core.exceptions import QAffineError
from qaffine.utils.configuration import Configuration
from qaffine.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_ERROR = 2

HELP = {
    "verify-r": "Yang-Baxter, unitarity and crossing checks of the R-matrix",
    "verify-rll": "RLL relations of the truncated L-operators",
    "verify-gauss": "Gauss decomposition of L^+ and L^-",
    "verify-suites": "evaluate relation suites on the c = 0 currents",
    "degenerate": "map trigonometric suites to the rational limit",
    "gauss-print": "list the order-zero Gauss factor coefficients",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=None, help="series cutoff (default 8)")
    common.add_argument("--suite", default=None, help="comma-separated suite names")
    common.add_argument("--rmatrix", default=None, help="R-matrix JSON file instead of the built-in one")
    common.add_argument("--format", choices=FORMATS, default=None, help="report format (default text)")
    common.add_argument("--seed", type=int, default=None, help="seed of the mutation probes")
    common.add_argument("--config", default=None, help="JSON configuration file")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="qaffine", description="Exact checks of the U_q[osp(1|2)^(1)] presentations.")
    commands = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = commands.add_parser(name, parents=[common], help=HELP[name])
        if name == "verify-suites":
            sub.add_argument("--suite-file", default=None, help="relation suite file to evaluate")
            sub.add_argument("--mutations", action="store_true", help="run a seeded mutation probe per suite")
        if name == "degenerate":
            sub.add_argument("--compare", action="store_true", help="compare with the bundled rational suite")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        Configuration.load(args.config)
        setup_logging(args.log_level)
        config = RunConfig.from_configuration(args)
        report = VerificationRunner(config).run()
    except (QAffineError, ValueError, KeyError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        logger.error(f"{args.command} failed: {message}")
        print(f"qaffine {args.command}: error: {message}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if config.format == "json" else report.to_text())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
