# qaffine/tests/test_kernel.py

import unittest
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qaffine.core.exceptions import EmptySafeWindow, NonExpandable, SeriesNotInvertible
from qaffine.kernel.grid import coefficient_grid, constant_grid, delta_grid
from qaffine.kernel.mpoly import MPoly, parse_mpoly, rational
from qaffine.kernel.qpowers import q_minus_q_inverse, q_power, q_ratexpr
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries, expand, series_inverse
from qaffine.kernel.support import Interval, Region

z = MPoly.var("z")
w = MPoly.var("w")
s = MPoly.var("s")

exponents = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
polys = st.dictionaries(exponents, st.integers(-3, 3), max_size=4).map(
    lambda terms: MPoly.from_terms({(a, b, c, 0, 0, 0, 0): k for (a, b, c), k in terms.items()}))
nonzero_polys = polys.filter(lambda p: not p.is_zero())
quotients = st.tuples(polys, nonzero_polys).map(lambda pair: RatExpr(*pair))
nonzero_quotients = st.tuples(nonzero_polys, nonzero_polys).map(lambda pair: RatExpr(*pair))


class TestMPoly(unittest.TestCase):

    def test_laurent_normal_form(self):
        # Negative powers cancel structurally
        self.assertEqual(z * z ** -1, MPoly.one())
        self.assertEqual((z + w) ** 2, z ** 2 + z * w * 2 + w ** 2)
        self.assertTrue((z - z).is_zero())
        self.assertEqual((z ** -1 + w).shift[1], -1)

    def test_text_round_trip(self):
        p = s ** 3 * z ** -1 * 2 - w.scale(rational(1, 2)) + 1
        self.assertEqual(parse_mpoly(str(p)), p)
        with self.assertRaises(ValueError):
            parse_mpoly("2*x")

    def test_substitutions(self):
        p = z ** 2 + w
        self.assertEqual(p.rename({"z": "w"}), w ** 2 + w)
        self.assertEqual(p.substitute("z", 2), w + 4)
        # z -> q z multiplies z^2 by q^2 = s^4
        self.assertEqual(p.scale_variable("z", q_power(1)), s ** 4 * z ** 2 + w)
        with self.assertRaises(ValueError):
            p.scale_variable("z", z + w)

    def test_unknown_variable(self):
        with self.assertRaises(ValueError):
            MPoly.var("x")

    def test_inverse_monomial(self):
        self.assertEqual((z * 3).inverse_monomial() * z * 3, MPoly.one())
        with self.assertRaises(ZeroDivisionError):
            (z + w).inverse_monomial()

    def test_q_powers(self):
        self.assertEqual(q_power(1), s ** 2)
        self.assertEqual(q_power(Fraction(-1, 2)), s ** -1)
        with self.assertRaises(ValueError):
            q_power(Fraction(1, 3))

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertTrue((a - a).is_zero())

    @settings(max_examples=40, deadline=None)
    @given(polys)
    def test_parse_inverts_str(self, p):
        self.assertEqual(parse_mpoly(str(p)), p)


class TestRatExpr(unittest.TestCase):

    def test_cross_multiplied_equality(self):
        # No gcd is taken, yet equal quotients compare equal
        self.assertEqual(RatExpr(z ** 2 - w ** 2, z - w), RatExpr(z + w))
        self.assertEqual(RatExpr(z - w) / RatExpr(z - w), RatExpr.one())
        self.assertNotEqual(RatExpr(z, z - w), RatExpr(w, z - w))

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            RatExpr(z, MPoly.zero())
        with self.assertRaises(ZeroDivisionError):
            RatExpr.zero().inverse()

    def test_monomial_denominator_is_folded(self):
        f = RatExpr(z + w, z * 2)
        self.assertTrue(f.is_polynomial())
        self.assertEqual(f.num, (z + w) * z ** -1 * MPoly.constant(rational(1, 2)))

    def test_q_minus_q_inverse(self):
        self.assertEqual(q_minus_q_inverse(), RatExpr(s ** 4 - 1, s ** 2))
        self.assertEqual(q_ratexpr(2) * q_ratexpr(-2), RatExpr.one())

    def test_substitute(self):
        f = RatExpr(z + w, z - w)
        self.assertEqual(f.substitute("w", 1), RatExpr(z + 1, z - 1))

    @settings(max_examples=40, deadline=None)
    @given(quotients, quotients, quotients)
    def test_field_axioms(self, a, b, c):
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertTrue((a - a).is_zero())
        if not b.is_zero():
            self.assertEqual((a / b) * b, a)


class TestExpansion(unittest.TestCase):

    def test_geometric_expansion(self):
        # 1/(w - z) = w^-1 sum (z/w)^n
        series = expand(RatExpr(MPoly.one(), w - z), ("z", "w"), Interval(0, 3))
        self.assertEqual(series.lowest, 0)
        for n in range(4):
            self.assertEqual(series[n], RatExpr(w ** -1))
        with self.assertRaises(IndexError):
            series[4]

    def test_expansion_is_multiplicative(self):
        # 1/(w - z)^2 = w^-2 sum (n + 1) (z/w)^n
        series = expand(RatExpr(MPoly.one(), (w - z) ** 2), ("z", "w"), Interval(0, 4))
        for n in range(5):
            self.assertEqual(series[n], RatExpr(w ** -2 * (n + 1)))

    def test_lowest_order(self):
        series = expand(RatExpr(MPoly.one(), z - w), ("w", "z"), Interval(-2, 2))
        self.assertEqual(series.lowest, 0)
        self.assertEqual(series[-1], RatExpr.zero())
        self.assertEqual(series[2], RatExpr(z ** -1))

    def test_unbounded_window(self):
        with self.assertRaises(ValueError):
            expand(RatExpr(z), ("z", "w"), Interval(0, None))

    @settings(max_examples=100, deadline=None)
    @given(nonzero_quotients, nonzero_quotients)
    def test_expansion_is_a_ring_map(self, f, g):
        # The expansion of a product is the Cauchy product of the expansions
        ratio = ("z", "w")
        try:
            lf = expand(f, ratio, Interval(0, 0)).lowest
            lg = expand(g, ratio, Interval(0, 0)).lowest
            ef = expand(f, ratio, Interval(lf, lf + 3))
            eg = expand(g, ratio, Interval(lg, lg + 3))
            efg = expand(f * g, ratio, Interval(lf + lg, lf + lg + 3))
        except NonExpandable:
            assume(False)
        self.assertEqual(efg.lowest, lf + lg)
        for n in range(lf + lg, lf + lg + 4):
            convolution = RatExpr.zero()
            for i in range(lf, n - lg + 1):
                convolution = convolution + ef[i] * eg[n - i]
            self.assertEqual(efg[n], convolution, n)


class TestFormalSeries(unittest.TestCase):

    def setUp(self):
        self.one_minus_z = FormalSeries("z", Interval(0, None), frozenset(range(5)),
                                        {0: RatExpr.one(), 1: RatExpr.constant(-1)})

    def test_inverse(self):
        inverse = series_inverse(self.one_minus_z, lambda c: c.inverse())
        self.assertEqual(inverse.window(), Interval(0, 4))
        for n in range(5):
            self.assertEqual(inverse[n], RatExpr.one())
        product = self.one_minus_z * inverse
        ok, bad = product.equal_on_known(FormalSeries.constant("z", RatExpr.one(), range(5)))
        self.assertTrue(ok)
        self.assertEqual(bad, [])

    def test_inverse_of_bilateral_series(self):
        bilateral = FormalSeries("z", Interval.everything(), frozenset({0}), {0: RatExpr.one()})
        with self.assertRaises(SeriesNotInvertible):
            series_inverse(bilateral, lambda c: c.inverse())

    def test_unknown_coefficients(self):
        with self.assertRaises(IndexError):
            self.one_minus_z[5]
        # Outside the support every coefficient is an exact zero
        self.assertIsNone(self.one_minus_z[-1])

    def test_disjoint_windows(self):
        a = FormalSeries("z", Interval.everything(), frozenset({0}), {})
        b = FormalSeries("z", Interval.everything(), frozenset({1}), {})
        with self.assertRaises(EmptySafeWindow):
            a.equal_on_known(b)

    def test_q_shift(self):
        shifted = self.one_minus_z.q_shifted(lambda n: q_ratexpr(n))
        self.assertEqual(shifted[1], -q_ratexpr(1))
        self.assertEqual(shifted[0], RatExpr.one())


class TestCoeffGrid(unittest.TestCase):

    def test_delta_transposes_to_inverse_shift(self):
        window = Interval(-2, 2)
        flipped = delta_grid(2, window).transposed()
        ok, bad = flipped.equals_on_common(delta_grid(-2, window, ("w", "z")))
        self.assertTrue(ok)
        self.assertEqual(bad, [])

    def test_coefficient_grid(self):
        # z/(z - w) = sum (w/z)^k, cells (-k, k)
        grid = coefficient_grid(RatExpr(z, z - w), ("w", "z"), 3)
        self.assertEqual(grid[(-2, 2)], RatExpr.one())
        self.assertIsNone(grid[(1, -1)])
        self.assertFalse(grid.is_determined((-5, 5)))
        with self.assertRaises(IndexError):
            grid[(-5, 5)]

    def test_inhomogeneous_coefficient(self):
        with self.assertRaises(NonExpandable):
            coefficient_grid(RatExpr(z + 1, z - w), ("w", "z"), 3)

    def test_constant_convolution(self):
        grid = coefficient_grid(RatExpr(z, z - w), ("w", "z"), 3)
        two = RatExpr.constant(2)
        ok, _ = (constant_grid(two) * grid).equals_on_common(grid.scaled(two))
        self.assertTrue(ok)

    def test_region_cells(self):
        region = Region.rectangle(Interval(0, 1), Interval(0, 1))
        self.assertEqual(list(region.cells()), [(0, 0), (0, 1), (1, 0), (1, 1)])
        self.assertTrue(Region(Interval(0, 1), Interval(0, 1), Interval(5, 6)).is_empty())


if __name__ == '__main__':
    unittest.main()
