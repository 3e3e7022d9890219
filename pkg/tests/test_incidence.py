"""Unit tests for replication vectors and incidence matrices."""

import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from src.design.catalog import catalog_plan
from src.design.effects import effect_parse
from src.design.incidence import (
    effect_block_matrix,
    incidence_bundle,
    incidence_matrix,
    replication_vector,
)
from tests.strategies import pencils, plans


class TestIncidenceOnP(unittest.TestCase):
    """Test cases for the 3^4 starting plan P."""

    def setUp(self):
        """Set up test fixtures."""
        self.plan = catalog_plan('P')
        self.e = lambda name: effect_parse(name, 4, self.plan.field)

    def test_replication(self):
        """Test replication vectors of A and of the defining word ABC."""
        np.testing.assert_array_equal(replication_vector(self.plan, self.e('A')), [3, 2, 3])
        np.testing.assert_array_equal(replication_vector(self.plan, self.e('ABC')), [8, 0, 0])

    def test_pair_incidence(self):
        """Test N^{AB}."""
        N = incidence_matrix(self.plan, self.e('A'), self.e('B'))
        np.testing.assert_array_equal(N, [[1, 1, 1], [0, 1, 1], [1, 1, 1]])
        self.assertEqual(N.dtype, np.int64)

    def test_block_incidence(self):
        """Test L^A and L^B."""
        np.testing.assert_array_equal(effect_block_matrix(self.plan, self.e('A')), [[1, 2], [2, 0], [1, 2]])
        np.testing.assert_array_equal(effect_block_matrix(self.plan, self.e('B')), [[2, 0], [1, 2], [1, 2]])

    def test_bundle(self):
        """Test that a bundle carries consistent marginals and serializes to lists."""
        bundle = incidence_bundle(self.plan, self.e('A'), self.e('C'))
        self.assertTrue(bundle.marginals_hold())
        data = bundle.to_dict()
        self.assertEqual(data['r_a'], [3, 2, 3])
        self.assertEqual(data['b'], 'C')
        single = incidence_bundle(self.plan, self.e('D'))
        self.assertIsNone(single.N_ab)
        self.assertTrue(single.marginals_hold())


class TestIncidenceProperties(unittest.TestCase):
    """Property tests for the marginal identities of incidence matrices."""

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_marginals(self, data):
        """Test row and column sums of N and L on random plans."""
        plan = data.draw(plans())
        a = data.draw(pencils(plan.field, plan.m))
        b = data.draw(pencils(plan.field, plan.m))
        N = incidence_matrix(plan, a, b)
        L_a = effect_block_matrix(plan, a)
        r_a = replication_vector(plan, a)
        self.assertEqual(int(r_a.sum()), plan.n)
        np.testing.assert_array_equal(N.sum(axis=1), r_a)
        np.testing.assert_array_equal(N.sum(axis=0), replication_vector(plan, b))
        np.testing.assert_array_equal(L_a.sum(axis=1), r_a)
        np.testing.assert_array_equal(L_a.sum(axis=0), [plan.k] * plan.b)
        np.testing.assert_array_equal(incidence_matrix(plan, b, a), N.T)
        self.assertTrue(incidence_bundle(plan, a, b).marginals_hold())


if __name__ == '__main__':
    unittest.main()
