# qaffine/tests/test_relations.py

import os
import random
import tempfile
import unittest
from fractions import Fraction

from qaffine.core.exceptions import DSLSyntaxError, UnknownCurrent
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.qpowers import q_ratexpr
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries
from qaffine.kernel.support import Interval
from qaffine.relations.builtin import (RATIONAL_SUITES, TRIGONOMETRIC_SUITES, builtin_suites,
                                       load_builtin, select_suites)
from qaffine.relations.evaluator import (VACUOUS_DETAIL, RelationEvaluator, coefficient_value, delta_ratio,
                                        is_vacuous)
from qaffine.relations.model import Arg, CurrentRef, Delta, Exponent, Num, Var
from qaffine.relations.mutation import mutate_relation, mutate_suite, mutation_probe
from qaffine.relations.parser import SuiteParser, parse_relation, parse_suite, parse_suites
from qaffine.relations.printer import format_relation, format_suite
from qaffine.relations.verify import verify_suites
from qaffine.rmatrix.builder import build_r, identity_r


def _series(var, coeffs, known=3):
    return FormalSeries(var, Interval(0, None), frozenset(range(known)), coeffs)


class TestSuiteParser(unittest.TestCase):

    def test_relation_structure(self):
        relation = parse_relation("[k] @expand(w/z) (z - w*q)/(z*q - w) * A(z) B^-1(w*q^2) = 0")
        self.assertEqual(relation.label, "k")
        self.assertEqual(relation.expand, "w/z")
        self.assertEqual(relation.rhs, ())
        term = relation.lhs[0]
        a, b = term.currents()
        self.assertEqual(a, CurrentRef("A", a.arg))
        self.assertTrue(b.inverse)
        self.assertEqual(b.arg.shift, Exponent(Fraction(2)))
        self.assertEqual(relation.current_names(), ("A", "B"))

    def test_exponents(self):
        relation = parse_relation("A(z*q^(1/2 - c)) = q^c * A(w)")
        self.assertEqual(relation.lhs[0].factors[0].arg.shift, Exponent(Fraction(1, 2), Fraction(-1)))
        self.assertEqual(str(Exponent(Fraction(1, 2), Fraction(-1))), "(-c+1/2)")

    def test_bare_q_argument(self):
        relation = parse_relation("k3m(wp*q) = k3m(zp*q^1) k2m^-1(w*q^-1)")
        self.assertEqual(relation.lhs[0].factors[0].arg, Arg("wp", Exponent(Fraction(1))))
        first, second = relation.rhs[0].factors
        self.assertEqual(first.arg, Arg("zp", Exponent(Fraction(1))))
        self.assertEqual(second.arg, Arg("w", Exponent(Fraction(-1))))
        with self.assertRaises(DSLSyntaxError):
            parse_suite("A(w*z);")

    def test_builtin_suites_parse(self):
        recast = load_builtin("x-anticommutators").get("x1m-x2p-recast")
        args = [f.arg for _, t in recast.terms() for f in t.currents()]
        self.assertIn(Arg("wp", Exponent(Fraction(1))), args)
        self.assertEqual(len(builtin_suites()), len(TRIGONOMETRIC_SUITES))

    def test_unlabelled_relations(self):
        suite = parse_suite("A(z) = A(w);\nB(z) = B(w);")
        self.assertEqual([r.label for r in suite.relations], ["r1", "r2"])
        self.assertEqual(suite.name, "")
        self.assertEqual(len(parse_suite("")), 0)

    def test_several_suites(self):
        suites = parse_suites("suite a;\n[x] A(z) = A(w);\nsuite b;\n[y] B(z) = B(w);\n")
        self.assertEqual([s.name for s in suites], ["a", "b"])
        with self.assertRaises(DSLSyntaxError):
            parse_suite("suite a;\nsuite b;\n")

    def test_syntax_error_location(self):
        with self.assertRaises(DSLSyntaxError) as ctx:
            parse_suites("suite s;\n[a] A(z) = ;\n", "s.txt")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.source, "s.txt")
        self.assertIn("s.txt:2:", str(ctx.exception))

    def test_rejected_chains(self):
        # Test the checks made while building the tree
        for text in ("A(z) * 2 = 0", "A^2(z) = 0", "2 / A(z) = 0", "A(z + w) = 0",
                     "@expand(z/z) A(z) = 0", "[a] A(z) = 0; [a] B(z) = 0"):
            with self.assertRaises(DSLSyntaxError, msg=text):
                parse_suite(text if text.endswith(";") else text + ";")

    def test_missing_file(self):
        with self.assertRaises(DSLSyntaxError):
            SuiteParser().parse_file("/nonexistent/suite.txt")

    def test_parse_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "mine.txt")
            with open(path, "w", encoding="utf-8") as f:
                f.write("# comment\nsuite mine;\n[c] A(z) A(w) = A(w) A(z);\n")
            suites = SuiteParser().parse_file(path)
        self.assertEqual(suites[0].get("c").label, "c")
        with self.assertRaises(KeyError):
            suites[0].get("missing")


class TestSuitePrinter(unittest.TestCase):

    def test_builtin_round_trip(self):
        for name in TRIGONOMETRIC_SUITES + RATIONAL_SUITES:
            suite = load_builtin(name)
            self.assertEqual(parse_suite(format_suite(suite)), suite, name)

    def test_relation_text(self):
        relation = parse_relation("[x] @cleared -A(z) + 2*q * B(w) = 0")
        self.assertEqual(format_relation(relation), "[x] @cleared -A(z) + 2 * q * B(w) = 0;")


class TestBuiltinSuites(unittest.TestCase):

    def test_names(self):
        self.assertEqual([s.name for s in builtin_suites()], list(TRIGONOMETRIC_SUITES))
        self.assertEqual(load_builtin("yangian").name, "yangian")
        with self.assertRaises(KeyError):
            load_builtin("nope")

    def test_select(self):
        selected = select_suites(["drinfeld", "k-commutation"])
        self.assertEqual([s.name for s in selected], ["k-commutation", "drinfeld"])
        with self.assertRaises(KeyError):
            select_suites(["yangian"])

    def test_drinfeld_relations(self):
        drinfeld = load_builtin("drinfeld")
        self.assertTrue(drinfeld.get("xm-xm").cleared)
        self.assertEqual(drinfeld.get("psi-xp").expand, "w/z")
        self.assertIn("psi", drinfeld.get("xp-xm").current_names())


class TestRelationEvaluator(unittest.TestCase):

    def setUp(self):
        identity = GradedMatrix.identity(3)
        upper = GradedMatrix.elementary(3, 0, 1)
        lower = GradedMatrix.elementary(3, 1, 0)
        self.bindings = {
            "A": _series("z", {0: identity, 1: GradedMatrix.identity(3, one=RatExpr.constant(2))}),
            "B": _series("z", {0: identity, 1: upper}),
            "C": _series("z", {0: identity, 1: lower}),
            "N": _series("z", {0: upper}),
        }
        self.evaluator = RelationEvaluator(self.bindings, 2)

    def test_commuting_currents(self):
        result = self.evaluator.evaluate(parse_relation("[c] A(z) A(w) = A(w) A(z)"))
        self.assertEqual(result.status, "pass")
        self.assertIsNotNone(result.safe_window)

    def test_noncommuting_currents(self):
        result = self.evaluator.evaluate(parse_relation("[c] B(z) C(w) = C(w) B(z)"))
        self.assertEqual(result.status, "fail")
        self.assertTrue(result.failing_cells)

    def test_delta_identifies_arguments(self):
        result = self.evaluator.evaluate(parse_relation("[d] delta(z/w) A(z) = delta(z/w) A(w)"))
        self.assertEqual(result.status, "pass")

    def test_vacuous_relation_is_skipped(self):
        # N(z) N(w) is zero for a nilpotent N, so the relation constrains nothing
        result = self.evaluator.evaluate(parse_relation("[n] (z - w*q) * N(z) N(w) = 3 * N(w) N(z)"))
        self.assertEqual(result.status, "skipped")
        self.assertEqual(result.detail, VACUOUS_DETAIL)
        grids = self.evaluator.term_grids(parse_relation("[c] B(z) C(w) = C(w) B(z)"))
        self.assertFalse(is_vacuous(grids))

    def test_unknown_current(self):
        with self.assertRaises(UnknownCurrent):
            self.evaluator.check_bound(parse_suite("suite s;\n[r] Y(z) = A(w);"))

    def test_coefficient_value(self):
        z, w, s = MPoly.var("z"), MPoly.var("w"), MPoly.var("s")
        relation = parse_relation("(z - w*q)/(z*q - w) * A(z) = 0")
        self.assertEqual(coefficient_value(relation.lhs[0].coefficient), RatExpr(z - w * s ** 2, z * s ** 2 - w))
        self.assertEqual(coefficient_value(Var("zp"), 2), RatExpr(z) * q_ratexpr(1))
        self.assertEqual(coefficient_value(Num(3)), RatExpr.constant(3))
        with self.assertRaises(ValueError):
            coefficient_value(Var("u"))

    def test_cleared_coefficients(self):
        z, w, s = MPoly.var("z"), MPoly.var("w"), MPoly.var("s")
        relation = parse_relation("@cleared (z - w)/(z - w*q) * A(z) = A(w)")
        first, second = self.evaluator.coefficients(relation)
        self.assertTrue(first.is_polynomial() and second.is_polynomial())
        self.assertEqual(first / second, RatExpr(z - w, z - w * s ** 2))

    def test_direction(self):
        relation = parse_relation("A(w) B(z) = B(z) A(w)")
        self.assertEqual(self.evaluator.direction(relation.lhs[0], relation), "w/z")
        self.assertEqual(self.evaluator.direction(relation.rhs[0], relation), "z/w")
        tagged = parse_relation("@expand(w/z) A(w) B(z) = 0")
        self.assertEqual(self.evaluator.direction(tagged.lhs[0], tagged), "w/z")

    def test_delta_ratio(self):
        delta = parse_relation("delta(w/z*q^2) A(z) = 0").lhs[0].factors[0]
        self.assertIsInstance(delta, Delta)
        self.assertEqual(delta_ratio(delta.argument), ("w", "z", Exponent(Fraction(2))))
        with self.assertRaises(ValueError):
            delta_ratio(Var("z"))


class TestMutation(unittest.TestCase):

    def setUp(self):
        self.suite = parse_suite("suite s;\n[a] A(z) A(w) = A(w) A(z);\n[b] A(z) = A(z);\n")

    def test_mutate_relation(self):
        relation = self.suite.get("a")
        mutated, description = mutate_relation(relation, random.Random(1))
        self.assertNotEqual(mutated, relation)
        self.assertIn("'a'", description)
        with self.assertRaises(ValueError):
            mutate_relation(parse_relation("[e] 0 = 0"), random.Random(1))

    def test_mutate_suite_is_seeded(self):
        first, text = mutate_suite(self.suite, 7)
        second, again = mutate_suite(self.suite, 7)
        self.assertEqual(first, second)
        self.assertEqual(text, again)
        changed = [r for r, o in zip(first.relations, self.suite.relations) if r != o]
        self.assertEqual(len(changed), 1)

    def test_probe_detects_mutations(self):
        identity = GradedMatrix.identity(3)
        evaluator = RelationEvaluator({"A": _series("z", {0: identity, 1: identity})}, 2)
        result = mutation_probe(evaluator, self.suite, 3)
        self.assertEqual(result.status, "pass")
        self.assertEqual(result.name, "mutation(s)")

    def test_vacuous_suite_is_not_a_detection(self):
        upper = GradedMatrix.elementary(3, 0, 1)
        evaluator = RelationEvaluator({"N": _series("z", {0: upper})}, 2)
        suite = parse_suite("suite v;\n[n] N(z) N(w) = N(w) N(z);\n")
        for seed in range(4):
            result = mutation_probe(evaluator, suite, seed)
            self.assertEqual(result.status, "skipped", seed)

    def test_vacuous_relations_are_passed_over(self):
        identity = GradedMatrix.identity(3)
        upper = GradedMatrix.elementary(3, 0, 1)
        evaluator = RelationEvaluator({"A": _series("z", {0: identity, 1: identity}),
                                       "N": _series("z", {0: upper})}, 2)
        suite = parse_suite("suite m;\n[n] N(z) N(w) = 0;\n[a] A(z) A(w) = A(w) A(z);\n")
        for seed in range(4):
            result = mutation_probe(evaluator, suite, seed)
            self.assertEqual(result.status, "pass", seed)
            self.assertIn("'a'", result.detail)


class TestVerifySuites(unittest.TestCase):

    def test_identity_k_commutation(self):
        # Test the k-relations on the trivial solution
        results = verify_suites(identity_r(), 2, [load_builtin("k-commutation")], mutations=True, seed=1)
        relations = [r for r in results if r.group == "k-commutation"]
        self.assertEqual(len(relations), len(load_builtin("k-commutation")))
        self.assertTrue(all(r.status == "pass" for r in relations))
        self.assertEqual(results[-1].name, "mutation(k-commutation)")

    def test_unbound_current(self):
        with self.assertRaises(UnknownCurrent):
            verify_suites(identity_r(), 2, [parse_suite("suite bad;\n[r] Y(z) = Y(w);")])


class TestOspSuites(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.results = verify_suites(build_r(), 3, builtin_suites(), mutations=True, seed=0)

    def _group(self, name):
        return [r for r in self.results if r.group == name]

    def _mutation(self, suite):
        return next(r for r in self.results if r.name == f"mutation({suite})")

    def test_nothing_fails(self):
        failing = [f"{r.group}/{r.name}: {r.failing_cells}" for r in self.results if r.status == "fail"]
        self.assertEqual(failing, [])

    def test_checkable_suites_pass(self):
        for name in ("k-commutation", "k-x-exchange", "x-anticommutators", "k-x-combined",
                     "x-anticommutator-combined"):
            relations = self._group(name)
            self.assertEqual(len(relations), len(load_builtin(name)) + (name == "x-anticommutators"))
            for result in relations:
                self.assertEqual(result.status, "pass", f"{name}/{result.name}")
            self.assertEqual(self._mutation(name).status, "pass", name)

    def test_recast_pair_agrees(self):
        recast = next(r for r in self.results if r.name == "x1m-x2p~x1m-x2p-recast")
        self.assertEqual(recast.status, "pass")

    def test_exchange_of_like_currents_is_vacuous(self):
        for name in ("x-x-exchange", "x-x-combined"):
            for result in self._group(name):
                self.assertEqual(result.status, "skipped", f"{name}/{result.name}")
                self.assertEqual(result.detail, VACUOUS_DETAIL)
            self.assertEqual(self._mutation(name).status, "skipped", name)

    def test_drinfeld(self):
        suite = load_builtin("drinfeld")
        for result in self._group("drinfeld"):
            if suite.get(result.name).cleared:
                self.assertIn(result.status, ("pass", "skipped"), result.name)
            else:
                self.assertEqual(result.status, "pass", result.name)
        self.assertEqual(self._mutation("drinfeld").status, "pass")

    def test_mutation_results(self):
        mutations = [r for r in self.results if r.name.startswith("mutation(")]
        self.assertEqual([r.name for r in mutations], [f"mutation({s.name})" for s in builtin_suites()])
        self.assertTrue(all(r.group == "mutations" for r in mutations))


if __name__ == '__main__':
    unittest.main()
