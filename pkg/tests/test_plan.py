"""Unit tests for blocked plans and the plan file format."""

import unittest

from src.algebra.gfvec import FieldVector, field_new
from src.design.effects import effect_parse
from src.design.plan import (
    Plan,
    add_factor,
    concatenate,
    delete_factor,
    parse_plan,
    serialize_plan,
)
from src.errors import (
    BadHeaderError,
    BlockCountMismatchError,
    BlockSizeMismatchError,
    DimensionMismatchError,
    NotPrimeError,
    PlanFormatError,
    RunLengthMismatchError,
    SymbolOutOfFieldError,
)

P_TEXT = """# two blocks of four runs
s=3 m=4 b=2 k=4
block: 0000 1110 1201 2011
block: 0212 0121 2102 2220
"""


class TestParsePlan(unittest.TestCase):
    """Test cases for reading plan files."""

    def setUp(self):
        """Set up test fixtures."""
        self.F3 = field_new(3)
        self.plan = parse_plan(P_TEXT)

    def test_header_and_shape(self):
        """Test the parsed shape of plan P."""
        self.assertEqual((self.plan.s, self.plan.m, self.plan.b, self.plan.k), (3, 4, 2, 4))
        self.assertEqual(self.plan.n, 8)

    def test_first_block(self):
        """Test the runs of block 1."""
        expected = [(0, 0, 0, 0), (1, 1, 1, 0), (1, 2, 0, 1), (2, 0, 1, 1)]
        self.assertEqual([run.coords for run in self.plan.blocks[0]], expected)

    def test_factor_rows_agree(self):
        """Test that the printed factor rows rebuild the same plan."""
        rows = ['0112|0022', '0120|2112', '0101|1202', '0011|2120']
        self.assertEqual(Plan.from_factor_rows(self.F3, rows), self.plan)
        self.assertEqual([self.plan.factor_row(i) for i in range(4)], rows)

    def test_serialize_is_canonical(self):
        """Test that serializing drops comments and parsing the output is stable."""
        text = serialize_plan(self.plan)
        self.assertEqual(text, P_TEXT.split('\n', 1)[1])
        self.assertEqual(parse_plan(text), self.plan)

    def test_comments_and_blank_lines(self):
        """Test that trailing comments and blank lines are ignored."""
        text = "\ns=2 m=2 b=1 k=2   # header\n\nblock: 00 11 # runs\n"
        plan = parse_plan(text)
        self.assertEqual(plan.b, 1)
        self.assertEqual(plan.runs[1].coords, (1, 1))

    def test_format_errors(self):
        """Test each plan-file error."""
        cases = [
            ("", BadHeaderError),
            ("s=3 m=4 b=2\nblock: 0000", BadHeaderError),
            ("s=4 m=1 b=1 k=1\nblock: 0", NotPrimeError),
            ("s=3 m=4 b=2 k=4\nblock: 0000 1110 1201 2011", BlockCountMismatchError),
            ("s=3 m=4 b=1 k=4\nruns: 0000 1110 1201 2011", PlanFormatError),
            ("s=3 m=4 b=1 k=4\nblock: 0000 1110 1201", BlockSizeMismatchError),
            ("s=3 m=4 b=1 k=2\nblock: 0000 111", RunLengthMismatchError),
            ("s=3 m=4 b=1 k=2\nblock: 0000 0312", SymbolOutOfFieldError),
        ]
        for text, error in cases:
            with self.subTest(text=text):
                with self.assertRaises(error):
                    parse_plan(text)

    def test_ragged_blocks_rejected(self):
        """Test that Plan refuses blocks of different sizes."""
        run = FieldVector(self.F3, (0, 0))
        with self.assertRaises(BlockSizeMismatchError):
            Plan(self.F3, 2, ((run, run), (run,)))


class TestPlanOperations(unittest.TestCase):
    """Test cases for levels and plan surgery."""

    def setUp(self):
        """Set up test fixtures."""
        self.F3 = field_new(3)
        self.plan = parse_plan(P_TEXT)

    def test_levels(self):
        """Test levels of an effect across the runs."""
        a = effect_parse('A', 4, self.F3)
        self.assertEqual(self.plan.levels(a).tolist(), [0, 1, 1, 2, 0, 0, 2, 2])
        abc = effect_parse('ABC', 4, self.F3)
        self.assertEqual(self.plan.levels(abc).tolist(), [0] * 8)

    def test_levels_dimension_mismatch(self):
        """Test that an effect from another ambient space is rejected."""
        with self.assertRaises(DimensionMismatchError):
            self.plan.levels(effect_parse('A', 5, self.F3))

    def test_block_index(self):
        """Test the block number of every run."""
        self.assertEqual(self.plan.block_index.tolist(), [0, 0, 0, 0, 1, 1, 1, 1])

    def test_delete_and_add_factor(self):
        """Test removing a factor and appending a copied factor."""
        smaller = delete_factor(self.plan, 3)
        self.assertEqual(smaller.m, 3)
        self.assertEqual(smaller.factor_row(2), '0101|1202')
        larger = add_factor(self.plan, 0)
        self.assertEqual(larger.m, 5)
        self.assertEqual(larger.factor_row(4), larger.factor_row(0))
        with self.assertRaises(DimensionMismatchError):
            delete_factor(self.plan, 4)

    def test_concatenate(self):
        """Test joining two plans block-wise."""
        joined = concatenate(self.plan, self.plan)
        self.assertEqual(joined.b, 4)
        self.assertEqual(joined.blocks[2], self.plan.blocks[0])
        with self.assertRaises(DimensionMismatchError):
            concatenate(self.plan, delete_factor(self.plan, 0))


if __name__ == '__main__':
    unittest.main()
