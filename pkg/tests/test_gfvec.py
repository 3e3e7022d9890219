"""Unit tests for prime-field vectors and subspaces."""

import random
import unittest

from hypothesis import given, settings, strategies as st

from src.algebra.gfvec import (
    FieldVector,
    dot,
    enumerate_subspaces,
    field_new,
    gaussian_binomial,
    members,
    orthocomplement,
    parse_subspace,
    rref,
    zero_subspace,
)
from src.errors import DimensionMismatchError, NotPrimeError, SubspaceSyntaxError, TooLargeError
from tests.strategies import subspaces


def vec(field, text):
    return FieldVector.from_string(text, field)


class TestField(unittest.TestCase):
    """Test cases for prime field construction and arithmetic."""

    def test_prime_orders(self):
        """Test that prime orders build a field."""
        self.assertEqual(field_new(3).order, 3)
        self.assertEqual(field_new(2).order, 2)
        self.assertEqual(repr(field_new(3)), "Field(3)")

    def test_composite_order_rejected(self):
        """Test that composite orders raise NotPrimeError."""
        with self.assertRaises(NotPrimeError):
            field_new(4)
        with self.assertRaises(NotPrimeError):
            field_new(1)

    def test_field_axioms_exhaustive(self):
        """Test distributivity and inverses for small primes."""
        for s in (2, 3, 5, 7):
            F = field_new(s)
            for x in F.elements():
                if x:
                    self.assertEqual(F.mul(x, F.inv(x)), 1)
                self.assertEqual(F.add(x, F.neg(x)), 0)
                for y in F.elements():
                    for z in F.elements():
                        self.assertEqual(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)))


class TestVectors(unittest.TestCase):
    """Test cases for FieldVector arithmetic."""

    def setUp(self):
        """Set up test fixtures."""
        self.F3 = field_new(3)

    def test_dot_examples(self):
        """Test dot products used by the catalog plans."""
        self.assertEqual(dot(vec(self.F3, '1110'), vec(self.F3, '1201')), 0)
        self.assertEqual(dot(vec(self.F3, '1022'), vec(self.F3, '0212')), 0)
        self.assertEqual(dot(vec(self.F3, '2121'), FieldVector.zero(self.F3, 4)), 0)

    def test_dot_dimension_mismatch(self):
        """Test that vectors of different length cannot be multiplied."""
        with self.assertRaises(DimensionMismatchError):
            dot(vec(self.F3, '11'), vec(self.F3, '111'))

    def test_residues_validated(self):
        """Test that coordinates must be canonical residues."""
        with self.assertRaises(ValueError):
            FieldVector(self.F3, (0, 3))
        self.assertEqual(FieldVector.of(self.F3, (4, -1)).coords, (1, 2))

    def test_string_forms(self):
        """Test digit-string parsing and printing."""
        v = vec(self.F3, '0102')
        self.assertEqual(v.to_string(), '0102')
        self.assertEqual(str(v), '(0,1,0,2)')
        with self.assertRaises(SubspaceSyntaxError):
            vec(self.F3, '0130')


class TestSubspaces(unittest.TestCase):
    """Test cases for echelon forms, complements and enumeration."""

    def setUp(self):
        """Set up test fixtures."""
        self.F3 = field_new(3)
        self.V4 = parse_subspace('0102;1010', self.F3)

    def test_rref_examples(self):
        """Test canonical bases for small spanning sets."""
        self.assertEqual(rref([vec(self.F3, '200')]).basis, (vec(self.F3, '100'),))
        self.assertEqual(self.V4.basis, (vec(self.F3, '1010'), vec(self.F3, '0102')))
        dependent = rref([vec(self.F3, '1110'), vec(self.F3, '2220')])
        self.assertEqual(dependent.basis, (vec(self.F3, '1110'),))

    def test_rref_empty_is_zero_subspace(self):
        """Test that an empty spanning set gives the zero subspace."""
        V = rref([], self.F3, 3)
        self.assertTrue(V.is_zero())
        self.assertEqual(V.to_string(), '000')

    def test_rref_order_insensitive(self):
        """Test that shuffling generators does not change the subspace."""
        gens = [vec(self.F3, t) for t in ('1021', '0112', '1100', '2211')]
        expected = rref(gens)
        rng = random.Random(7)
        for _ in range(10):
            rng.shuffle(gens)
            self.assertEqual(rref(gens), expected)
        self.assertEqual(rref(list(expected.basis)), expected)

    def test_orthocomplement_examples(self):
        """Test complements of a coordinate line and of V4."""
        line = rref([vec(self.F3, '100')])
        self.assertEqual(orthocomplement(line).basis, (vec(self.F3, '010'), vec(self.F3, '001')))
        perp = orthocomplement(self.V4)
        self.assertEqual(perp.basis, (vec(self.F3, '1020'), vec(self.F3, '0101')))
        self.assertEqual(orthocomplement(perp), self.V4)

    def test_orthocomplement_of_extremes(self):
        """Test the complements of the zero space and the full space."""
        perp = orthocomplement(zero_subspace(self.F3, 3))
        self.assertEqual(perp.dim, 3)
        self.assertTrue(orthocomplement(perp).is_zero())

    def test_enumeration_counts(self):
        """Test subspace counts against the Gaussian binomial."""
        self.assertEqual(len(list(enumerate_subspaces(self.F3, 3, 1))), 13)
        self.assertEqual(len(list(enumerate_subspaces(self.F3, 4, 2))), 130)
        self.assertEqual(len(list(enumerate_subspaces(self.F3, 4, 0))), 1)
        for s in (2, 3, 5):
            F = field_new(s)
            for m in range(1, 5):
                for t in range(m + 1):
                    found = list(enumerate_subspaces(F, m, t))
                    self.assertEqual(len(found), gaussian_binomial(m, t, s))
                    self.assertEqual(len(set(found)), len(found))

    def test_enumeration_is_sorted_and_canonical(self):
        """Test that enumerated bases are canonical and in sort_key order."""
        found = list(enumerate_subspaces(self.F3, 4, 2))
        self.assertEqual(found, sorted(found, key=lambda V: V.sort_key()))
        for V in found:
            self.assertEqual(rref(list(V.basis)), V)

    def test_members(self):
        """Test member listing order and size."""
        self.assertEqual(members(zero_subspace(self.F3, 3)), [FieldVector.zero(self.F3, 3)])
        line = rref([vec(self.F3, '100')])
        self.assertEqual([v.to_string() for v in members(line)], ['000', '100', '200'])
        listed = members(self.V4)
        self.assertEqual(len(listed), 9)
        self.assertEqual(len(set(listed)), 9)
        self.assertEqual(listed[1].to_string(), '0102')
        self.assertEqual(listed[3].to_string(), '1010')

    def test_members_guard(self):
        """Test that listing a subspace above the dimension limit raises TooLargeError."""
        with self.assertRaises(TooLargeError):
            members(self.V4, max_dim=1)

    def test_contains(self):
        """Test membership via rank."""
        self.assertTrue(self.V4.contains(vec(self.F3, '1112')))
        self.assertFalse(self.V4.contains(vec(self.F3, '0010')))

    def test_parse_subspace_errors(self):
        """Test malformed subspace strings."""
        for text in ('01;1', '', '0102;', '01a2'):
            with self.assertRaises(SubspaceSyntaxError):
                parse_subspace(text, self.F3)
        with self.assertRaises(SubspaceSyntaxError):
            parse_subspace('010', self.F3, m=4)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_members_orthogonal_to_complement(self, data):
        """Test that V and its complement are orthogonal with complementary dimensions."""
        s = data.draw(st.sampled_from([2, 3, 5]))
        F = field_new(s)
        m = data.draw(st.integers(1, 4))
        V = data.draw(subspaces(F, m, max_t=3))
        perp = orthocomplement(V)
        self.assertEqual(V.dim + perp.dim, m)
        for v in V.basis:
            for w in perp.basis:
                self.assertEqual(dot(v, w), 0)
        self.assertEqual(orthocomplement(perp), V)


if __name__ == '__main__':
    unittest.main()
