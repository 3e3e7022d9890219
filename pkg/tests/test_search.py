"""Unit tests for the expansion-subspace search."""

import unittest

import pytest

from src.algebra.gfvec import parse_subspace
from src.analysis.search import format_scores, score_subspace, search_best
from src.design.catalog import catalog_plan, catalog_subspace
from src.design.effects import model_mains_and_2fi
from src.errors import DimensionMismatchError, TooLargeError


class TestScoreSubspace(unittest.TestCase):
    """Test cases for scoring one subspace."""

    def setUp(self):
        """Set up test fixtures."""
        self.plan = catalog_plan('P3')
        self.model = model_mains_and_2fi(3, self.plan.field)

    def test_catalog_subspace(self):
        """Test the score of the catalog expansion of P3."""
        score = score_subspace(self.plan, catalog_subspace('V3'), self.model)
        self.assertEqual(score.subspace, '100')
        self.assertEqual(score.n_blocks, 6)
        self.assertLess(score.n_estimable, 9)
        self.assertEqual(sum(score.class_sizes) + score.n_confounded + score.n_constant, 9)
        self.assertNotIn('order_key', score.to_dict())


class TestSearchBest(unittest.TestCase):
    """Test cases for ranking all subspaces of one dimension."""

    def setUp(self):
        """Set up test fixtures."""
        self.plan = catalog_plan('P3')
        self.model = model_mains_and_2fi(3, self.plan.field)

    def test_all_lines_scored(self):
        """Test that every line of F_3^3 is scored once, in rank order."""
        scores = search_best(self.plan, 1, self.model, limit=20, workers=1)
        self.assertEqual(len(scores), 13)
        self.assertEqual(len({s.subspace for s in scores}), 13)
        keys = [s.rank_key() for s in scores]
        self.assertEqual(keys, sorted(keys))

    def test_limit(self):
        """Test that the default limit keeps the ten best."""
        scores = search_best(self.plan, 1, self.model, workers=1)
        self.assertEqual(len(scores), 10)
        best = search_best(self.plan, 1, self.model, limit=1, workers=1)
        self.assertEqual(best[0], scores[0])

    def test_zero_dimension(self):
        """Test that t=0 scores the unexpanded plan."""
        scores = search_best(self.plan, 0, self.model, workers=1)
        self.assertEqual(len(scores), 1)
        self.assertEqual(scores[0].n_blocks, self.plan.b)

    def test_guards(self):
        """Test dimension, limit and candidate-count errors."""
        with self.assertRaises(DimensionMismatchError):
            search_best(self.plan, 4, self.model)
        with self.assertRaises(ValueError):
            search_best(self.plan, 1, self.model, limit=0)
        with self.assertRaises(TooLargeError):
            search_best(self.plan, 1, self.model, workers=1, max_candidates=5)

    def test_format(self):
        """Test the TSV output."""
        scores = search_best(self.plan, 1, self.model, limit=2, workers=1)
        lines = format_scores(scores).splitlines()
        self.assertEqual(lines[0], '# rank\tsubspace\tblocks\testimable\tpartial\tconfounded')
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith('1\t'))

    def test_scores_reproducible(self):
        """Test that rescoring a returned subspace gives the stored score."""
        top = search_best(self.plan, 1, self.model, limit=1, workers=1)[0]
        V = parse_subspace(top.subspace, self.plan.field, self.plan.m)
        self.assertEqual(score_subspace(self.plan, V, self.model), top)

    @pytest.mark.slow
    def test_planes_of_p(self):
        """Test the exhaustive t=2 search over P against the catalog subspace."""
        plan = catalog_plan('P')
        model = model_mains_and_2fi(4, plan.field)
        scores = search_best(plan, 2, model, limit=130, workers=1)
        self.assertEqual(len(scores), 130)
        v4 = score_subspace(plan, catalog_subspace('V4'), model)
        self.assertIn(v4, scores)
        self.assertGreaterEqual(scores[0].n_estimable, v4.n_estimable)

    @pytest.mark.slow
    def test_parallel_matches_sequential(self):
        """Test that a worker pool returns the same ranking."""
        sequential = search_best(self.plan, 1, self.model, limit=13, workers=1)
        parallel = search_best(self.plan, 1, self.model, limit=13, workers=2)
        self.assertEqual(sequential, parallel)


if __name__ == '__main__':
    unittest.main()
