"""Arithmetic in a prime field F_s and linear algebra over F_s^m.

Vectors are immutable tuples of canonical residues. Subspaces are kept in
reduced row-echelon form with unit pivots, so two Subspace values compare
equal exactly when they span the same space.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from src.errors import (
    DimensionMismatchError,
    NotPrimeError,
    SubspaceSyntaxError,
    TooLargeError,
)

logger = logging.getLogger(__name__)


class Field(ABC):
    """A finite field whose elements are the integers 0..order-1."""

    order: int

    @abstractmethod
    def add(self, x: int, y: int) -> int: ...

    @abstractmethod
    def sub(self, x: int, y: int) -> int: ...

    @abstractmethod
    def mul(self, x: int, y: int) -> int: ...

    @abstractmethod
    def inv(self, x: int) -> int: ...

    def neg(self, x: int) -> int:
        return self.sub(0, x)

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)


@dataclass(frozen=True)
class PrimeField(Field):
    """F_s for a prime s; arithmetic is integer arithmetic mod s."""

    order: int

    def __post_init__(self):
        if self.order < 2 or not isprime(self.order):
            raise NotPrimeError(f"Field order must be a prime, got {self.order}")

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.order

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.order

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.order

    def inv(self, x: int) -> int:
        if x % self.order == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.order)

    def __repr__(self) -> str:
        return f"Field({self.order})"


def field_new(s: int) -> Field:
    """Build the field of order s (primes only)."""
    return PrimeField(s)


@dataclass(frozen=True)
class FieldVector:
    """A point of EG(m, s), or a coefficient vector of an effect."""

    field: Field
    coords: Tuple[int, ...]

    def __post_init__(self):
        s = self.field.order
        if any((not isinstance(c, int)) or c < 0 or c >= s for c in self.coords):
            raise ValueError(f"Coordinates must be residues in [0, {s}): {self.coords}")

    @classmethod
    def of(cls, field: Field, values: Iterable[int]) -> 'FieldVector':
        """Build a vector, reducing every value mod s."""
        return cls(field, tuple(int(v) % field.order for v in values))

    @classmethod
    def zero(cls, field: Field, m: int) -> 'FieldVector':
        return cls(field, (0,) * m)

    @classmethod
    def from_string(cls, text: str, field: Field) -> 'FieldVector':
        """Parse a digit string such as "0102" (s <= 10)."""
        if not text or not text.isdigit():
            raise SubspaceSyntaxError(f"Not a digit string: {text!r}")
        values = tuple(int(ch) for ch in text)
        if any(v >= field.order for v in values):
            raise SubspaceSyntaxError(f"Digit outside F_{field.order} in {text!r}")
        return cls(field, values)

    @property
    def m(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: 'FieldVector') -> None:
        if self.field != other.field or self.m != other.m:
            raise DimensionMismatchError(
                f"Vectors differ in field or length: {self} vs {other}"
            )

    def __add__(self, other: 'FieldVector') -> 'FieldVector':
        self._check(other)
        s = self.field.order
        return FieldVector(self.field, tuple((x + y) % s for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: 'FieldVector') -> 'FieldVector':
        self._check(other)
        s = self.field.order
        return FieldVector(self.field, tuple((x - y) % s for x, y in zip(self.coords, other.coords)))

    def scale(self, c: int) -> 'FieldVector':
        s = self.field.order
        return FieldVector(self.field, tuple((c * x) % s for x in self.coords))

    def dot(self, other: 'FieldVector') -> int:
        self._check(other)
        return sum(x * y for x, y in zip(self.coords, other.coords)) % self.field.order

    def to_string(self) -> str:
        return ''.join(str(c) for c in self.coords)

    def __str__(self) -> str:
        return '(' + ','.join(str(c) for c in self.coords) + ')'


def dot(x: FieldVector, y: FieldVector) -> int:
    """x'y in F_s."""
    return x.dot(y)


def _domain(field: Field):
    return GF(field.order, symmetric=False)


def _to_domain_matrix(rows: Sequence[Sequence[int]], field: Field, ncols: int) -> DomainMatrix:
    K = _domain(field)
    return DomainMatrix([[K(int(x)) for x in r] for r in rows], (len(rows), ncols), K)


def _residues(dm: DomainMatrix, field: Field) -> List[List[int]]:
    s = field.order
    return [[int(e) % s for e in row] for row in dm.to_list()]


def _row_reduce(rows: List[List[int]], field: Field, ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row-echelon form with unit pivots; returns (nonzero rows, pivot columns)."""
    if not rows or ncols == 0:
        return [], []
    reduced, pivots = _to_domain_matrix(rows, field, ncols).rref()
    return _residues(reduced, field)[:len(pivots)], list(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_s^m held by its canonical echelon basis."""

    field: Field
    ambient_dim: int
    basis: Tuple[FieldVector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(b.coords) if c) for b in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def sort_key(self) -> Tuple:
        """Total order matching the enumeration order of enumerate_subspaces."""
        return (self.pivots, tuple(c for b in self.basis for c in b.coords))

    def functional(self, a: FieldVector) -> Tuple[int, ...]:
        """Values of v -> a'v on the basis; all zero iff a lies in the orthocomplement."""
        return tuple(a.dot(b) for b in self.basis)

    def is_orthogonal(self, a: FieldVector) -> bool:
        """True iff a is in the orthocomplement of this subspace."""
        return not any(self.functional(a))

    def contains(self, v: FieldVector) -> bool:
        if v.m != self.ambient_dim:
            raise DimensionMismatchError(f"Vector {v} is not in F^{self.ambient_dim}")
        return rref(list(self.basis) + [v], self.field, self.ambient_dim).dim == self.dim

    def to_string(self) -> str:
        """Text form "0102;1010"; the zero subspace prints as m zeros."""
        if self.is_zero():
            return '0' * self.ambient_dim
        return ';'.join(b.to_string() for b in self.basis)

    def __str__(self) -> str:
        return '<' + ', '.join(str(b) for b in self.basis) + '>'


def rref(vectors: Sequence[FieldVector], field: Optional[Field] = None,
         m: Optional[int] = None) -> Subspace:
    """Canonical echelon basis of the span of `vectors`.

    `field` and `m` are only needed when `vectors` is empty.
    """
    if vectors:
        field = field or vectors[0].field
        m = vectors[0].m if m is None else m
        for v in vectors:
            if v.field != field or v.m != m:
                raise DimensionMismatchError(f"Vector {v} is not in F_{field.order}^{m}")
    if field is None or m is None:
        raise ValueError("field and m are required for an empty spanning set")
    rows, _ = _row_reduce([v.coords for v in vectors], field, m)
    return Subspace(field, m, tuple(FieldVector(field, tuple(r)) for r in rows))


def zero_subspace(field: Field, m: int) -> Subspace:
    return Subspace(field, m, ())


def full_space(field: Field, m: int) -> Subspace:
    return Subspace(field, m, tuple(
        FieldVector(field, tuple(1 if j == i else 0 for j in range(m))) for i in range(m)
    ))


def orthocomplement(V: Subspace) -> Subspace:
    """V-perp = {w : w'v = 0 for all v in V}, the nullspace of V's basis matrix."""
    m = V.ambient_dim
    if V.is_zero():
        return full_space(V.field, m)
    basis = _to_domain_matrix([b.coords for b in V.basis], V.field, m)
    null_rows = _residues(basis.nullspace(), V.field)
    return rref([FieldVector(V.field, tuple(r)) for r in null_rows], V.field, m)


def gaussian_binomial(m: int, t: int, s: int) -> int:
    """Number of t-dimensional subspaces of F_s^m."""
    if t < 0 or t > m:
        return 0
    num = 1
    den = 1
    for i in range(t):
        num *= s ** (m - i) - 1
        den *= s ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field: Field, m: int, t: int) -> Iterator[Subspace]:
    """Every t-dimensional subspace of F_s^m, each exactly once.

    Pivot patterns come in lexicographic order, and within a pattern the free
    entries run through F_s lexicographically, so the stream is sorted by
    Subspace.sort_key.
    """
    if t < 0 or t > m:
        raise ValueError(f"Need 0 <= t <= m, got t={t}, m={m}")
    s = field.order
    for pivots in combinations(range(m), t):
        free_slots = [(i, j) for i, p in enumerate(pivots)
                      for j in range(p + 1, m) if j not in pivots]
        for values in product(range(s), repeat=len(free_slots)):
            rows = [[0] * m for _ in range(t)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), value in zip(free_slots, values):
                rows[i][j] = value
            yield Subspace(field, m, tuple(FieldVector(field, tuple(r)) for r in rows))


def members(V: Subspace, max_dim: Optional[int] = None) -> List[FieldVector]:
    """All s^t vectors of V, ordered lexicographically by their basis coefficients."""
    if max_dim is None:
        from src.config import get_config
        max_dim = get_config().max_member_dim
    if V.dim > max_dim:
        raise TooLargeError(f"Refusing to list {V.field.order}^{V.dim} members (limit dim {max_dim})")
    s = V.field.order
    m = V.ambient_dim
    out = []
    for coeffs in product(range(s), repeat=V.dim):
        acc = [0] * m
        for c, b in zip(coeffs, V.basis):
            if c:
                acc = [(x + c * y) % s for x, y in zip(acc, b.coords)]
        out.append(FieldVector(V.field, tuple(acc)))
    return out


def parse_subspace(text: str, field: Field, m: Optional[int] = None) -> Subspace:
    """Parse "0102;1010" into the subspace spanned by the listed vectors."""
    parts = [p.strip() for p in text.strip().split(';')]
    if not parts or any(not p for p in parts):
        raise SubspaceSyntaxError(f"Malformed subspace string: {text!r}")
    vectors = [FieldVector.from_string(p, field) for p in parts]
    lengths = {v.m for v in vectors}
    if len(lengths) != 1:
        raise SubspaceSyntaxError(f"Basis vectors differ in length: {text!r}")
    length = lengths.pop()
    if m is not None and length != m:
        raise SubspaceSyntaxError(f"Subspace vectors have length {length}, expected {m}")
    return rref(vectors, field, length)
