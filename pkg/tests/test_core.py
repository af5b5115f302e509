# tests/test_core.py

import json
import unittest

from qaffine.core.exceptions import DSLSyntaxError, EmptySafeWindow, QAffineError
from qaffine.core.report import CheckResult, Report, failing_entries, grid_result
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.grid import CoeffGrid, constant_grid
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.support import Interval, Region


class TestCheckResult(unittest.TestCase):

    def test_statuses(self):
        self.assertTrue(CheckResult.passed("a"))
        self.assertFalse(CheckResult.failed("b", [(1, 2)]))
        self.assertEqual(CheckResult.from_cells("c", []).status, "pass")
        self.assertEqual(CheckResult.from_cells("c", [(0, 1)]).failing_cells, [[0, 1]])
        with self.assertRaises(ValueError):
            CheckResult("d", "maybe")

    def test_to_dict(self):
        result = CheckResult.skipped("e", "empty safe window", group="rs", notes=["R expanded in w/z"])
        data = result.to_dict()
        self.assertEqual(data["status"], "skipped")
        self.assertEqual(data["notes"], ["R expanded in w/z"])
        self.assertNotIn("elapsed_ms", data)
        self.assertIn("elapsed_ms", result.to_dict(include_timing=True))


class TestReport(unittest.TestCase):

    def setUp(self):
        self.report = Report("verify-r: osp(1|2)")

    def test_exit_codes(self):
        # A report without checks only lists extras
        self.assertEqual(self.report.exit_code(), 0)
        self.report.add(CheckResult.skipped("s", "empty"))
        self.assertEqual(self.report.exit_code(), 2)
        self.report.add(CheckResult.passed("p"))
        self.assertEqual(self.report.exit_code(), 0)
        self.report.add(CheckResult.failed("f"))
        self.assertEqual(self.report.exit_code(), 1)

    def test_json(self):
        self.report.extend([CheckResult.passed("b", group="g"), CheckResult.failed("a", group="g")])
        self.report.extras["suites"] = "drinfeld"
        document = json.loads(self.report.to_json())
        self.assertEqual(document["summary"], {"pass": 1, "fail": 1, "skipped": 0})
        self.assertEqual(document["extras"], {"suites": "drinfeld"})
        self.assertEqual(len(document["results"]), 2)

    def test_text(self):
        self.report.add(CheckResult.failed("ybe", ["11,22"], group="rmatrix", detail="1 entry"))
        text = self.report.to_text()
        self.assertIn("[rmatrix]", text)
        self.assertIn("FAIL", text)
        self.assertIn("failing=11,22", text)
        self.assertTrue(text.endswith("summary: 0 pass, 1 fail, 0 skipped"))


class TestGridResult(unittest.TestCase):

    def test_empty_window_is_skipped(self):
        empty = CoeffGrid(Region.rectangle(Interval.point(0), Interval.point(0)), frozenset(), {})
        self.assertEqual(grid_result("r", empty).status, "skipped")

    def test_vanishing_residual_passes(self):
        zero = constant_grid(GradedMatrix.zero(3))
        result = grid_result("r", zero, group="rs")
        self.assertEqual(result.status, "pass")
        self.assertEqual(result.safe_window, [0, 0, 0, 0])

    def test_nonzero_cells(self):
        grid = constant_grid(GradedMatrix.elementary(3, 1, 2))
        result = grid_result("r", grid)
        self.assertEqual(result.status, "fail")
        self.assertEqual(result.failing_cells, [[0, 0, 2, 3]])
        self.assertEqual(failing_entries({(1, -1): RatExpr.one()}), [[1, -1]])


class TestExceptions(unittest.TestCase):

    def test_hierarchy(self):
        self.assertTrue(issubclass(EmptySafeWindow, QAffineError))
        error = DSLSyntaxError("unexpected ';'", 3, 7, "suite.txt")
        self.assertEqual(str(error), "suite.txt:3:7: unexpected ';'")
        self.assertEqual((error.line, error.column), (3, 7))


if __name__ == '__main__':
    unittest.main()
