"""Unit tests for the blockplan command line."""

import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

import pytest

from src.design.plan import parse_plan
from src.interface.cli import EXIT_OK, EXIT_USAGE, main

P_TEXT = """s=3 m=4 b=2 k=4
block: 0000 1110 1201 2011
block: 0212 0121 2102 2220
"""


class TestCli(unittest.TestCase):
    """Test cases for the subcommands and their exit codes."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.plan_path = os.path.join(self.temp_dir.name, 'p.plan')
        with open(self.plan_path, 'w') as f:
            f.write(P_TEXT)

    def tearDown(self):
        """Clean up temporary files."""
        self.temp_dir.cleanup()

    def run_cli(self, *argv):
        with patch('sys.stdout', new_callable=io.StringIO) as out, \
                patch('sys.stderr', new_callable=io.StringIO) as err:
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_check(self):
        """Test flag output for one pair."""
        code, out, _ = self.run_cli('check', '--catalog', 'P', 'A', 'C')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, 'OTB\n')

    def test_check_json_from_file(self):
        """Test JSON output for a plan read from a file."""
        code, out, _ = self.run_cli('check', '--plan', self.plan_path, 'A', 'B', '--json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['flags'], ['NonOrthogonal'])
        self.assertEqual(data['N_ab'], [[1, 1, 1], [0, 1, 1], [1, 1, 1]])

    def test_check_unknown_effect(self):
        """Test that an effect outside the plan is a usage error."""
        code, out, err = self.run_cli('check', '--catalog', 'P', 'A', 'E')
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, '')
        self.assertTrue(err.startswith('error: '))

    def test_expand_to_file(self):
        """Test writing an expanded plan."""
        out_path = os.path.join(self.temp_dir.name, 'expanded.plan')
        code, out, _ = self.run_cli('expand', '--plan', self.plan_path, '--subspace', '0102;1010',
                                    '--out', out_path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, '')
        with open(out_path) as f:
            expanded = parse_plan(f.read())
        self.assertEqual((expanded.b, expanded.k), (18, 4))

    def test_expand_bad_subspace(self):
        """Test that a malformed subspace is a usage error."""
        code, _, err = self.run_cli('expand', '--catalog', 'P', '--subspace', '01;10')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('error:', err)

    def test_bad_plan_file(self):
        """Test missing and malformed plan files."""
        code, _, _ = self.run_cli('check', '--plan', os.path.join(self.temp_dir.name, 'nope'), 'A', 'B')
        self.assertEqual(code, EXIT_USAGE)
        with open(self.plan_path, 'w') as f:
            f.write("s=3 m=4 b=1 k=2\nblock: 0000 0312\n")
        code, _, err = self.run_cli('check', '--plan', self.plan_path, 'A', 'B')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('outside F_3', err)

    def test_report(self):
        """Test the combined report sections."""
        code, out, _ = self.run_cli('report', '--catalog', 'P', '--model', 'mains')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith('# plan s=3 m=4 b=2 k=4\n'))
        self.assertIn('# pairs\n', out)
        self.assertIn('# estimability\n', out)
        self.assertIn('# defining words\nABC\nAB^2D\nAC^2D^2\nBC^2D\n', out)
        self.assertIn('# block words\n', out)

    def test_report_json(self):
        """Test the JSON report."""
        code, out, _ = self.run_cli('report', '--catalog', 'P', '--model', 'mains', '--json')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['plan'], {'s': 3, 'm': 4, 'b': 2, 'k': 4})
        self.assertEqual(len(data['relations']['pairs']), 6)
        self.assertEqual(data['defining_words'], ['ABC', 'AB^2D', 'AC^2D^2', 'BC^2D'])

    def test_search(self):
        """Test the ranked subspace table."""
        code, out, _ = self.run_cli('search', '--catalog', 'P3', '--t', '1', '--limit', '3')
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[0].startswith('# rank'))

    def test_search_bad_dimension(self):
        """Test that t larger than m is a usage error."""
        code, _, _ = self.run_cli('search', '--catalog', 'P3', '--t', '5')
        self.assertEqual(code, EXIT_USAGE)

    def test_unknown_catalog_name(self):
        """Test that an unknown catalog plan is a usage error."""
        code, _, err = self.run_cli('check', '--catalog', 'P9', 'A', 'B')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('P9', err)

    def test_missing_config_file(self):
        """Test that a missing --config file is a usage error."""
        code, _, _ = self.run_cli('--config', os.path.join(self.temp_dir.name, 'none.env'),
                                  'check', '--catalog', 'P', 'A', 'C')
        self.assertEqual(code, EXIT_USAGE)

    def test_argparse_errors(self):
        """Test that argparse rejects a missing command and conflicting sources."""
        with patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                main([])
            self.assertEqual(ctx.exception.code, 2)
            with self.assertRaises(SystemExit):
                main(['check', '--catalog', 'P', '--plan', self.plan_path, 'A', 'B'])

    @pytest.mark.slow
    def test_verify_paper(self):
        """Test the claim run exits 0 with the TSV header."""
        code, out, _ = self.run_cli('verify-paper')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith('# claim\tanchor\tcomputed\tclaimed\tstatus\tnote\n'))
        self.assertIn('DISCREPANCY-DOCUMENTED', out)


if __name__ == '__main__':
    unittest.main()
