# qaffine/tests/test_rmatrix.py

import json
import os
import tempfile
import unittest
from fractions import Fraction

from qaffine.core.exceptions import NoSolution, RMatrixFormatError
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.ratexpr import RatExpr
from qaffine.rmatrix.builder import build_r, build_r21, conjugate_by_permutation, identity_r
from qaffine.rmatrix.loader import RMatrixLoader
from qaffine.rmatrix.verify import (
    CrossingParams,
    find_crossing_params,
    rho_matrix,
    verify_crossing,
    verify_initial_condition,
    verify_r21,
    verify_rho_commutation,
    verify_scale_invariance,
    verify_unitarity,
    verify_weight_conservation,
    verify_ybe,
)


class TestRMatrixBuilder(unittest.TestCase):

    def setUp(self):
        self.r = build_r()

    def test_shape(self):
        self.assertEqual(self.r.dim, 3)
        self.assertEqual(self.r.matrix.dim, 9)
        self.assertEqual(self.r.variables, ("z", "w"))

    def test_rename(self):
        renamed = self.r.at("a", "u")
        self.assertEqual(renamed.rename({"a": "z", "u": "w"}), self.r.matrix)
        self.assertIs(self.r.at("z", "w"), self.r.matrix)

    def test_with_entry_leaves_original(self):
        mutated = self.r.with_entry("12", "12", RatExpr.one())
        self.assertEqual(mutated.entry("12", "12"), RatExpr.one())
        self.assertNotEqual(self.r.entry("12", "12"), RatExpr.one())
        self.assertIn("mutated 12,12", mutated.name)

    def test_r21_is_conjugate(self):
        self.assertEqual(conjugate_by_permutation(self.r).matrix, build_r21().matrix)


class TestRMatrixIdentities(unittest.TestCase):

    def setUp(self):
        self.r = build_r()

    def test_initial_condition(self):
        self.assertTrue(verify_initial_condition(self.r))
        # The identity is not P at z = w
        self.assertFalse(verify_initial_condition(identity_r()))

    def test_initial_condition_mutation(self):
        result = verify_initial_condition(self.r.with_entry("12", "12", RatExpr.one()))
        self.assertEqual(result.status, "fail")
        self.assertIn("12,12", result.failing_cells)

    def test_weight_conservation(self):
        self.assertTrue(verify_weight_conservation(self.r))
        result = verify_weight_conservation(self.r.with_entry("11", "12", RatExpr.one()))
        self.assertEqual(result.failing_cells, ["11,12"])

    def test_scale_invariance(self):
        self.assertTrue(verify_scale_invariance(self.r))

    def test_rho_commutation(self):
        self.assertTrue(verify_rho_commutation(self.r, 1))
        self.assertTrue(rho_matrix(0).is_diagonal())
        self.assertEqual(rho_matrix(0), GradedMatrix.identity(3))

    def test_unitarity(self):
        self.assertTrue(verify_unitarity(self.r))
        self.assertTrue(verify_unitarity(self.r, build_r21()))

    def test_r21(self):
        self.assertTrue(verify_r21(self.r, build_r21()))

    def test_ybe(self):
        self.assertTrue(verify_ybe(self.r))

    def test_ybe_detects_flipped_sign(self):
        b = self.r.entry("12", "21")
        result = verify_ybe(self.r.with_entry("12", "21", -b))
        self.assertEqual(result.status, "fail")

    def test_crossing_parameters(self):
        grid = [Fraction(k, 2) for k in range(-6, 7)]
        self.assertEqual(find_crossing_params(self.r, grid), [CrossingParams(Fraction(3), Fraction(1))])

    def test_crossing_is_projective(self):
        result = verify_crossing(self.r, CrossingParams(Fraction(3), Fraction(1)))
        self.assertEqual(result.status, "pass")
        self.assertTrue(result.detail.startswith("lambda ="))
        self.assertEqual(verify_crossing(self.r, CrossingParams(Fraction(3), Fraction(-1))).status, "fail")

    def test_crossing_without_solution(self):
        with self.assertRaises(NoSolution):
            find_crossing_params(self.r, [0])

    def test_identity_baseline(self):
        # Test the trivial solution
        identity = identity_r()
        self.assertTrue(verify_ybe(identity))
        self.assertTrue(verify_unitarity(identity))
        self.assertEqual(find_crossing_params(identity, [0]), [CrossingParams(Fraction(0), Fraction(0))])


class TestRMatrixLoader(unittest.TestCase):

    def setUp(self):
        self.loader = RMatrixLoader()
        self.r = build_r()
        self.document = self.loader.to_dict(self.r)

    def test_dict_round_trip(self):
        loaded = self.loader.from_dict(json.loads(json.dumps(self.document)))
        self.assertEqual(loaded.matrix, self.r.matrix)
        self.assertEqual(loaded.grading, self.r.grading)

    def test_file_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "r.json")
            self.loader.save(self.r, path)
            self.assertEqual(self.loader.load(path).matrix, self.r.matrix)

    def test_missing_file(self):
        with self.assertRaises(RMatrixFormatError):
            self.loader.load("/nonexistent/r.json")

    def test_malformed_documents(self):
        # Test each validation in turn
        with self.assertRaises(RMatrixFormatError):
            self.loader.from_dict({**self.document, "dim": 0})
        with self.assertRaises(RMatrixFormatError):
            self.loader.from_dict({**self.document, "grading": [0, 1]})
        rows = [list(row) for row in self.document["entries"]]
        rows[0][0] = ["1", "0"]
        with self.assertRaises(RMatrixFormatError):
            self.loader.from_dict({**self.document, "entries": rows})
        rows[0][0] = ["x", "1"]
        with self.assertRaises(RMatrixFormatError):
            self.loader.from_dict({**self.document, "entries": rows})
        with self.assertRaises(RMatrixFormatError):
            self.loader.from_dict({**self.document, "entries": rows[:3]})


if __name__ == '__main__':
    unittest.main()
