# qaffine/tests/test_gauss.py

import unittest

from qaffine.gauss.currents import build_currents, current_bindings, kappa, kappa_bar
from qaffine.gauss.decompose import FACTOR_NAMES, gauss_decompose, leading_coefficients, rational_gauss
from qaffine.gauss.verify import verify_explicit_inverse, verify_roundtrip
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.ratexpr import RatExpr
from qaffine.rmatrix.builder import build_r, identity_r
from qaffine.rs.loperator import build_pair


class TestGaussDecomposition(unittest.TestCase):

    def setUp(self):
        self.l_plus, self.l_minus = build_pair(build_r(), 2)

    def test_roundtrip(self):
        for op in (self.l_plus, self.l_minus):
            g = gauss_decompose(op)
            self.assertEqual(g.sign, op.sign)
            self.assertTrue(verify_roundtrip(op, g), op.sign)

    def test_explicit_inverse(self):
        g = gauss_decompose(self.l_plus)
        self.assertTrue(verify_explicit_inverse(self.l_plus, g))

    def test_leading_coefficients(self):
        document = leading_coefficients(gauss_decompose(self.l_plus))
        self.assertEqual(document["sign"], "+")
        self.assertEqual(sorted(document["factors"]), sorted(FACTOR_NAMES))
        self.assertEqual(len(document["factors"]["k1"]), 3)


class TestTrivialGauss(unittest.TestCase):

    def setUp(self):
        self.l_plus, self.l_minus = build_pair(identity_r(), 2)
        self.g_plus = gauss_decompose(self.l_plus)
        self.g_minus = gauss_decompose(self.l_minus)

    def test_factors_of_identity(self):
        # Test that only the diagonal factors survive
        identity = GradedMatrix.identity(3)
        for name in ("k1", "k2", "k3"):
            self.assertEqual(getattr(self.g_plus, name)[0], identity)
        for name in ("e1", "e2", "e31", "f1", "f2", "f13"):
            value = getattr(self.g_plus, name)[0]
            self.assertTrue(value is None or value.is_zero(), name)

    def test_rational_gauss(self):
        g = rational_gauss(identity_r().at("z", "a"), "+")
        self.assertEqual(g.k2, GradedMatrix.identity(3))
        self.assertTrue(g.f13.is_zero())

    def test_currents(self):
        currents = build_currents(self.g_plus, self.g_minus)
        expected = GradedMatrix.identity(3, one=kappa() - RatExpr.one())
        self.assertEqual(currents.phi[0], expected)
        self.assertEqual(currents.psi[0], GradedMatrix.identity(3, one=RatExpr.one() - kappa_bar()))
        self.assertEqual(currents.central_charge, 0)
        with self.assertRaises(ValueError):
            build_currents(self.g_minus, self.g_plus)

    def test_bindings(self):
        bindings = current_bindings(self.g_plus, self.g_minus)
        for name in ("k1p", "f13m", "e2p", "Xp", "Xm", "phi", "psi"):
            self.assertIn(name, bindings)

    def test_kappa(self):
        s = MPoly.var("s")
        self.assertEqual(kappa(), RatExpr(MPoly.one() + s ** -1 - s))
        self.assertEqual(kappa_bar(), RatExpr(MPoly.one() + s - s ** -1))


if __name__ == '__main__':
    unittest.main()
