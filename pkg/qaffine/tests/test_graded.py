# qaffine/tests/test_graded.py

import unittest
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from qaffine.core.exceptions import NotInvertible
from qaffine.graded.inverse import common_denominator, inverse
from qaffine.graded.matrix import OSP12_GRADING, GradedMatrix, Grading, pair_index, pair_label
from qaffine.graded.tensor import (
    component_form_rll,
    embed_leg,
    gauge_first_leg,
    graded_kron,
    graded_permutation,
    inverse_supertranspose,
    leg_permutation,
    partial_supertranspose,
    supertranspose,
    theta_form_rll,
    theta_gauge,
    theta_matrix,
)
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.ratexpr import RatExpr
from qaffine.rmatrix.builder import build_r, identity_r

z = RatExpr.var("z")
w = RatExpr.var("w")

integer_matrices = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                            min_size=3, max_size=3).map(
    lambda rows: GradedMatrix.from_rows(rows, OSP12_GRADING))


def _even_r(values):
    """A 9x9 matrix with integer entries on the parity-preserving positions."""
    g = OSP12_GRADING.tensor(OSP12_GRADING)
    entries = {(i, j): RatExpr.constant(v) for (i, j), v in zip(product(range(9), repeat=2), values)
               if (g[i] + g[j]) % 2 == 0}
    return GradedMatrix(9, g, entries)


def _operator_matrix(values):
    """A 3x3 matrix of 3x3 blocks, block (a, b) of parity [a] + [b]."""
    g = OSP12_GRADING
    values = iter(values)
    blocks = {}
    for a, b in product(range(3), repeat=2):
        entries = {}
        for i, j in product(range(3), repeat=2):
            v = next(values)
            if (g[i] + g[j] + g[a] + g[b]) % 2 == 0:
                entries[(i, j)] = RatExpr.constant(v)
        blocks[(a, b)] = GradedMatrix(3, g, entries)
    return GradedMatrix(3, g, blocks)


eighty_one = st.lists(st.integers(-2, 2), min_size=81, max_size=81)


class TestGradedMatrix(unittest.TestCase):

    def test_grading(self):
        self.assertEqual(OSP12_GRADING.tensor(OSP12_GRADING).parities, (0, 1, 0, 1, 0, 1, 0, 1, 0))
        with self.assertRaises(ValueError):
            Grading((0, 2))
        with self.assertRaises(ValueError):
            GradedMatrix(3, Grading((0, 1)))

    def test_sparse_entries(self):
        m = GradedMatrix.from_rows([[1, 0, 0], [0, 0, 2], [0, 0, 0]])
        self.assertEqual(sorted(m.entries), [(0, 0), (1, 2)])
        self.assertEqual(m[(2, 2)], RatExpr.zero())
        with self.assertRaises(IndexError):
            GradedMatrix(2, None, {(2, 0): RatExpr.one()})

    def test_pair_labels(self):
        self.assertEqual(pair_index(2, 3), 5)
        self.assertEqual(pair_label(5), "23")

    def test_block(self):
        m = GradedMatrix.identity(3).kron(GradedMatrix.from_rows([[1, 2], [3, 4]]))
        self.assertEqual(m.block(1, 1, 2), GradedMatrix.from_rows([[1, 2], [3, 4]]))
        self.assertTrue(m.block(0, 1, 2).is_zero())


class TestGradedTensor(unittest.TestCase):

    def setUp(self):
        self.grading = OSP12_GRADING

    def test_graded_permutation_is_an_involution(self):
        p = graded_permutation(self.grading)
        self.assertEqual(p * p, GradedMatrix.identity(9))
        # v_2 (x) v_2 is odd (x) odd and picks up a sign
        self.assertEqual(p[(pair_index(2, 2), pair_index(2, 2))], RatExpr.constant(-1))

    def test_theta_squares_to_one(self):
        theta = theta_matrix(self.grading)
        self.assertTrue(theta.is_diagonal())
        self.assertEqual(theta * theta, GradedMatrix.identity(9))

    def test_partial_supertranspose_legs(self):
        with self.assertRaises(ValueError):
            partial_supertranspose(GradedMatrix.identity(9), 3, self.grading)
        # The identity is invariant under supertransposition in either leg
        identity = GradedMatrix.identity(9)
        self.assertEqual(partial_supertranspose(identity, 1, self.grading), identity)
        self.assertEqual(partial_supertranspose(identity, 2, self.grading), identity)

    def test_embed_leg(self):
        e = GradedMatrix.elementary(3, 0, 1, grading=self.grading)
        embedded = embed_leg(e, 2, 2)
        self.assertEqual(embedded, graded_kron(GradedMatrix.identity(3, self.grading), e))
        with self.assertRaises(ValueError):
            embed_leg(e, 3, 2)

    def test_leg_permutation(self):
        # Swapping two legs twice is the identity
        swap = leg_permutation((2, 1, 3), grading=self.grading)
        self.assertEqual(swap * swap, GradedMatrix.identity(27))

    def test_theta_gauge(self):
        r = build_r().at("z", "w")
        d = theta_gauge(r, self.grading)
        self.assertEqual(d, GradedMatrix.diagonal([1, 1, -1], self.grading))
        theta = theta_matrix(self.grading)
        dd = d.kron(d)
        self.assertEqual(dd * r * dd, theta * r * theta)
        # Conjugating the first leg twice is the identity
        self.assertEqual(gauge_first_leg(gauge_first_leg(r, self.grading), self.grading), r)

    def test_theta_gauge_of_identity(self):
        r = identity_r().at("z", "w")
        self.assertEqual(theta_gauge(r, self.grading), GradedMatrix.identity(3, self.grading))
        self.assertEqual(gauge_first_leg(r, self.grading), r)

    @settings(max_examples=100, deadline=None)
    @given(eighty_one, eighty_one, eighty_one)
    def test_component_form_matches_theta_form(self, r_values, first_values, second_values):
        r = _even_r(r_values)
        first, second = _operator_matrix(first_values), _operator_matrix(second_values)
        component_lhs, component_rhs = component_form_rll(r, first, second)
        theta_lhs, theta_rhs = theta_form_rll(r, first, second)
        for component, theta in ((component_lhs, theta_lhs), (component_rhs, theta_rhs)):
            for key in set(component) | set(theta.entries):
                left = component.get(key, GradedMatrix.zero(3, self.grading))
                right = theta.entries.get(key, GradedMatrix.zero(3, self.grading))
                self.assertTrue((left - right).is_zero(), key)

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices)
    def test_supertranspose_inverts(self, m):
        self.assertEqual(inverse_supertranspose(supertranspose(m)), m)
        self.assertEqual(supertranspose(inverse_supertranspose(m)), m)


class TestInverse(unittest.TestCase):

    def test_inverse_of_spectral_matrix(self):
        m = GradedMatrix.from_rows([[z, RatExpr.one()], [RatExpr.one(), w]])
        self.assertEqual(m * inverse(m), GradedMatrix.identity(2))
        self.assertEqual(inverse(m)[(0, 1)], RatExpr(MPoly.constant(-1), MPoly.var("z") * MPoly.var("w") - 1))

    def test_inverse_of_rational_entries(self):
        m = GradedMatrix.diagonal([RatExpr.one() / (z - w), z, RatExpr.one()], OSP12_GRADING)
        self.assertEqual(inverse(m), GradedMatrix.diagonal([z - w, RatExpr.one() / z, RatExpr.one()]))

    def test_singular(self):
        with self.assertRaises(NotInvertible):
            inverse(GradedMatrix.from_rows([[z, w], [z, w]]))
        with self.assertRaises(NotInvertible):
            inverse(GradedMatrix.diagonal([z, RatExpr.zero()]))

    def test_common_denominator(self):
        values = [RatExpr.one() / (z - w), RatExpr.one() / ((z - w) * (z + w)), z]
        d = common_denominator(values)
        self.assertTrue(all(v.den.divides(d) for v in values))

    @settings(max_examples=30, deadline=None)
    @given(integer_matrices)
    def test_inverse_property(self, m):
        try:
            m_inverse = inverse(m)
        except NotInvertible:
            return
        self.assertEqual(m * m_inverse, GradedMatrix.identity(3))


if __name__ == '__main__':
    unittest.main()
