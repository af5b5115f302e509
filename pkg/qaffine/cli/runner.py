# qaffine/cli/runner.py

"""
Verification Runner Module for qaffine

The VerificationRunner loads the inputs named by a RunConfig (the R-matrix
and any external suite file) before any computation starts, dispatches the
command and collects the outcome in a Report.
"""

from typing import Callable, Dict, List, Optional
import logging

from qaffine.cli.config import RunConfig
from qaffine.core.report import Report
from qaffine.gauss import verify as gauss_verify
from qaffine.gauss.decompose import gauss_decompose, leading_coefficients
from qaffine.relations.builtin import TRIGONOMETRIC_SUITES, load_builtin, select_suites
from qaffine.relations.model import RelationSuite
from qaffine.relations.parser import SuiteParser
from qaffine.relations.verify import verify_suites
from qaffine.rmatrix import verify as rmatrix_verify
from qaffine.rmatrix.builder import RMatrixSpec, build_r, build_r21
from qaffine.rmatrix.loader import RMatrixLoader
from qaffine.rs import verify as rs_verify
from qaffine.rs.loperator import build_pair
from qaffine.utils.configuration import Configuration
from qaffine.yangian.compare import compare_suites, print_rational_suite
from qaffine.yangian.degenerate import degenerate_suite, rational_suite

logger = logging.getLogger(__name__)

DEFAULT_DEGENERATE_SUITES = ("drinfeld",)
YANGIAN_SUITE = "yangian"


class VerificationRunner:
    """
    Runs one command of the command-line tool.
    """

    def __init__(self, config: RunConfig) -> None:
        """
        Loads the R-matrix and the external suites of the run.

        Args:
            config (RunConfig): The validated run configuration.

        Raises:
            RMatrixFormatError: If the R-matrix file is missing or malformed.
            DSLSyntaxError: If the suite file does not parse.
        """
        self.config = config
        self.r: RMatrixSpec = self._load_rmatrix()
        self.r21: Optional[RMatrixSpec] = None if config.rmatrix_path else build_r21()
        self.external: List[RelationSuite] = []
        if config.suite_file:
            self.external = SuiteParser().parse_file(config.suite_file)
            logger.info(f"Loaded {len(self.external)} suites from '{config.suite_file}'.")
        self._commands: Dict[str, Callable[[], Report]] = {
            "verify-r": self.verify_r,
            "verify-rll": self.verify_rll,
            "verify-gauss": self.verify_gauss,
            "verify-suites": self.verify_suites,
            "degenerate": self.degenerate,
            "gauss-print": self.gauss_print,
        }

    def _load_rmatrix(self) -> RMatrixSpec:
        if self.config.rmatrix_path:
            return RMatrixLoader().load(self.config.rmatrix_path)
        return build_r()

    def run(self) -> Report:
        logger.info(f"Running '{self.config.command}' at cutoff {self.config.cutoff}.")
        report = self._commands[self.config.command]()
        logger.info(f"'{self.config.command}' finished: {len(report.passed)} pass, "
                    f"{len(report.failed)} fail, {len(report.skipped)} skipped.")
        return report

    # -- commands ------------------------------------------------------

    def verify_r(self) -> Report:
        results = rmatrix_verify.verify_all(self.r, self.r21, Configuration.crossing_values())
        return Report(f"verify-r: {self.r.name}", results)

    def verify_rll(self) -> Report:
        l_plus, l_minus = build_pair(self.r, self.config.cutoff)
        results = rs_verify.verify_all(self.r, l_plus, l_minus, self.r21)
        return Report(f"verify-rll: {self.r.name}, cutoff {self.config.cutoff}", results)

    def verify_gauss(self) -> Report:
        l_plus, l_minus = build_pair(self.r, self.config.cutoff)
        results = gauss_verify.verify_all(self.r, l_plus, l_minus)
        return Report(f"verify-gauss: {self.r.name}, cutoff {self.config.cutoff}", results)

    def selected_suites(self) -> List[RelationSuite]:
        """
        External suites when a suite file is given, built-in ones otherwise,
        filtered by --suite.

        Raises:
            KeyError: If --suite names a suite that does not exist.
        """
        if not self.external:
            return select_suites(self.config.suites)
        if not self.config.suites:
            return list(self.external)
        by_name = {s.name: s for s in self.external}
        missing = [n for n in self.config.suites if n not in by_name]
        if missing:
            raise KeyError(f"suite file has no suites named {', '.join(missing)}")
        return [by_name[n] for n in self.config.suites]

    def verify_suites(self) -> Report:
        suites = self.selected_suites()
        results = verify_suites(self.r, self.config.cutoff, suites,
                                mutations=self.config.mutations, seed=self.config.seed)
        return Report(f"verify-suites: {self.r.name}, cutoff {self.config.cutoff}, c = 0", results,
                      extras={"suites": ", ".join(s.name for s in suites)})

    def degenerate(self) -> Report:
        names = self.config.suites or DEFAULT_DEGENERATE_SUITES
        unknown = [n for n in names if n not in TRIGONOMETRIC_SUITES]
        if unknown:
            raise KeyError(f"unknown suites: {', '.join(unknown)}")
        report = Report("degenerate")
        target = rational_suite(load_builtin(YANGIAN_SUITE)) if self.config.compare else None
        printed = []
        counts = {}
        for name in names:
            rational = degenerate_suite(load_builtin(name))
            printed.append(print_rational_suite(rational))
            counts[name] = len(rational)
            if target is not None:
                report.extend(compare_suites(rational, target).results)
        report.extras["degenerated"] = "\n".join(printed)
        report.extras["relations"] = counts
        return report

    def gauss_print(self) -> Report:
        l_plus, l_minus = build_pair(self.r, self.config.cutoff)
        report = Report(f"gauss-print: {self.r.name}")
        for op in (l_plus, l_minus):
            data = gauss_decompose(op)
            report.extras[f"L^{op.sign}"] = leading_coefficients(data)["factors"]
        return report
