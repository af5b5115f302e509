# qaffine/tests/test_rs.py

import unittest

from qaffine.kernel.support import Interval
from qaffine.rmatrix.builder import build_r, identity_r
from qaffine.rs.expansion import matrix_series
from qaffine.rs.loperator import MINUS, PLUS, build_L, build_pair
from qaffine.rs.verify import (
    SIGN_PAIRS,
    THETA_FAMILIES,
    consequence_direction,
    rll_residual,
    verify_component_form,
    verify_inverse,
    verify_rll,
    verify_theta_consequences,
)


class TestLOperator(unittest.TestCase):

    def setUp(self):
        self.cutoff = 2
        self.l_plus, self.l_minus = build_pair(build_r(), self.cutoff)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            build_L("*", build_r(), 2)
        with self.assertRaises(ValueError):
            build_L(PLUS, build_r(), -1)

    def test_windows(self):
        # L^+ is a series in z, L^- in z^-1
        self.assertEqual(self.l_plus.window(), Interval(0, self.cutoff))
        self.assertEqual(self.l_minus.window(), Interval(-self.cutoff, 0))
        self.assertEqual(self.l_plus.direction, "z/a")
        self.assertEqual(self.l_minus.direction, "a/z")

    def test_names(self):
        self.assertEqual(str(self.l_plus), "L^+(z)")
        self.assertEqual(self.l_minus.at("w").var, "w")
        self.assertEqual(str(self.l_minus.inverse()), "L^-(z)^-1")

    def test_blocks(self):
        blocks = self.l_plus.blocks()
        self.assertEqual(len(blocks), 9)
        self.assertEqual(blocks[(1, 1)].var, "z")

    def test_inverse(self):
        self.assertTrue(verify_inverse(self.l_plus))
        self.assertTrue(verify_inverse(self.l_minus))


class TestRLL(unittest.TestCase):

    def setUp(self):
        self.r = identity_r()
        self.l_plus, self.l_minus = build_pair(self.r, 2)

    def test_invalid_sign_pair(self):
        with self.assertRaises(ValueError):
            rll_residual("+*", self.r, self.l_plus, self.l_minus)

    def test_trivial_solution(self):
        # Test the identity R with constant L-operators
        for pair in ("++", "--", "+-"):
            result = verify_rll(pair, self.r, self.l_plus, self.l_minus)
            self.assertEqual(result.status, "pass", pair)
            self.assertIsNotNone(result.safe_window)

    def test_trivial_consequences(self):
        results = verify_theta_consequences(self.r, self.l_plus, self.l_minus)
        self.assertEqual(len(results), sum(len(f.pairs) for f in THETA_FAMILIES))
        self.assertTrue(all(r.status == "pass" for r in results))
        mixed = next(r for r in results if r.name == "llr4(-+)")
        self.assertEqual(mixed.notes, ["R21 expanded in w/z"])

    def test_consequence_directions(self):
        self.assertEqual(consequence_direction(PLUS, PLUS), "z/w")
        self.assertEqual(consequence_direction(MINUS, MINUS), "z/w")
        self.assertEqual(consequence_direction(PLUS, MINUS), "z/w")
        self.assertEqual(consequence_direction(MINUS, PLUS), "w/z")


class TestOspRLL(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.r = build_r()
        cls.l_plus, cls.l_minus = build_pair(cls.r, 3)

    def test_rll_relations(self):
        for pair in SIGN_PAIRS:
            result = verify_rll(pair, self.r, self.l_plus, self.l_minus)
            self.assertEqual(result.status, "pass", f"{pair}: {result.failing_cells}")

    def test_consequences(self):
        for result in verify_theta_consequences(self.r, self.l_plus, self.l_minus):
            self.assertEqual(result.status, "pass", f"{result.name}: {result.failing_cells}")

    def test_component_form(self):
        result = verify_component_form(self.r)
        self.assertEqual(result.status, "pass", result.detail)

    def test_odd_entries_carry_gauge_signs(self):
        # The gauge flips the blocks L_13, L_31, L_23 and L_32
        order_zero = self.l_plus.coefficient(0)
        r_zero = matrix_series(self.r.at("z", "a"), ("z", "a"), Interval(0, 0), "z")[0]
        self.assertFalse(r_zero.block(0, 2, 3).is_zero())
        self.assertEqual(order_zero.block(0, 2, 3), -r_zero.block(0, 2, 3))
        self.assertEqual(order_zero.block(0, 0, 3), r_zero.block(0, 0, 3))

    def test_wrong_r_is_detected(self):
        b = self.r.entry("12", "21")
        result = verify_rll("++", self.r.with_entry("12", "21", -b), self.l_plus, self.l_minus)
        self.assertEqual(result.status, "fail")


if __name__ == '__main__':
    unittest.main()
