# qaffine/tests/test_yangian.py

import unittest
from fractions import Fraction

from qaffine.core.exceptions import NonFactorableCoefficient
from qaffine.relations.builtin import load_builtin
from qaffine.relations.model import Num, Var
from qaffine.relations.parser import parse_relation, parse_suite
from qaffine.yangian.compare import compare_suites, print_rational_suite
from qaffine.yangian.degenerate import (degenerate_coefficient, degenerate_relation, degenerate_suite,
                                        rational_coefficient, rational_suite)
from qaffine.yangian.linear import LinearFactorProduct, LinearForm


def _coefficient(text):
    """Coefficient tree of the single lhs term of ``text``."""
    return parse_relation(text).lhs[0].coefficient


class TestLinearForms(unittest.TestCase):

    def test_tagged_variables(self):
        up = LinearForm.variable("up")
        self.assertEqual(up.coefficient("u"), 1)
        self.assertEqual(up.coefficient("hc"), Fraction(1, 2))
        with self.assertRaises(ValueError):
            LinearForm.of({"x": 1})

    def test_monic(self):
        form = LinearForm.of({"u": -2, "h": 4})
        lead, monic = form.monic()
        self.assertEqual(lead, -2)
        self.assertEqual(monic, LinearForm.of({"u": 1, "h": -2}))

    def test_products_cancel(self):
        a = LinearFactorProduct.form(LinearForm.of({"u": 1, "v": -1}))
        b = LinearFactorProduct.form(LinearForm.of({"u": 2, "v": -2}))
        self.assertEqual(a / b, LinearFactorProduct.const(Fraction(1, 2)))
        self.assertTrue((a / a).is_one())
        self.assertEqual((a ** 2).degree(), (2, 0))
        self.assertEqual((a ** -1).degree(), (0, 1))


class TestDegeneration(unittest.TestCase):

    def test_coefficient_atoms(self):
        # q^a X - q^b Y -> X' - Y' + (a - b) h
        trigonometric = degenerate_coefficient(_coefficient("(z - w*q)/(z*q - w) * A(z) = 0"))
        rational = rational_coefficient(_coefficient("(u - v - h)/(u - v + h) * A(u) = 0"))
        self.assertEqual(trigonometric, rational)

    def test_q_difference(self):
        value = degenerate_coefficient(_coefficient("1/(q - q^-1) * A(z) = 0"))
        self.assertEqual(value, rational_coefficient(_coefficient("1/(2*h) * A(u) = 0")))
        self.assertTrue(degenerate_coefficient(_coefficient("q^3 * A(z) = 0")).is_one())

    def test_tagged_arguments(self):
        relation = degenerate_relation(parse_relation("[t] phi(zp) = psi(wm)"), bound=6)
        self.assertEqual(relation.lhs[0].factors[0].arg.var, "up")
        self.assertEqual(relation.rhs[0].factors[0].arg.var, "vm")

    def test_delta(self):
        trigonometric = degenerate_relation(parse_relation("[d] delta(w/z*q^c) A(w) = 0"), bound=6)
        rational = rational_suite(parse_suite("[d] delta(um - vp) A(v) = 0;")).get("d")
        self.assertEqual(trigonometric.lhs[0].factors, rational.lhs[0].factors)

    def test_inadmissible_coefficients(self):
        # Test each rejected shape
        for text in ("z * A(z) = 0", "(z + w) * A(z) = 0", "(z - w + q) * A(z) = 0",
                     "(q - q) * A(z) = 0", "(z - q) * A(z) = 0", "q^100 * A(z) = 0"):
            with self.assertRaises(NonFactorableCoefficient, msg=text):
                degenerate_coefficient(_coefficient(text), bound=6)

    def test_suite_errors_name_the_relation(self):
        suite = parse_suite("suite s;\n[bad] (z + w) * A(z) = 0;")
        with self.assertRaises(NonFactorableCoefficient) as ctx:
            degenerate_suite(suite, bound=6)
        self.assertIn("s/bad", str(ctx.exception))

    def test_rational_reader(self):
        self.assertEqual(rational_coefficient(Num(2)), LinearFactorProduct.const(2))
        with self.assertRaises(NonFactorableCoefficient):
            rational_coefficient(Var("z"))


class TestYangianComparison(unittest.TestCase):

    def setUp(self):
        self.yangian = rational_suite(load_builtin("yangian"))
        self.drinfeld = degenerate_suite(load_builtin("drinfeld"))

    def test_drinfeld_limit(self):
        report = compare_suites(self.drinfeld, self.yangian)
        self.assertEqual(report.failed, [])
        self.assertEqual(len(report.passed), len(self.yangian))
        self.assertEqual(report.exit_code(), 0)

    def test_mismatch_is_reported(self):
        broken = rational_suite(parse_suite(
            "suite yangian;\n[phi-phi] phi(u) phi(v) = 2 * phi(v) phi(u);"))
        report = compare_suites(self.drinfeld, broken)
        by_name = {r.name: r for r in report.sorted_results()}
        self.assertEqual(by_name["phi-phi"].status, "fail")
        self.assertEqual(by_name["xp-xm"].status, "fail")
        self.assertEqual(report.exit_code(), 1)

    def test_printed_suite_parses_back(self):
        text = print_rational_suite(self.drinfeld)
        self.assertTrue(text.startswith("suite drinfeld;"))
        self.assertEqual(rational_suite(parse_suite(text)), self.drinfeld)


if __name__ == '__main__':
    unittest.main()
