"""Exact rational matrices backed by sympy's DomainMatrix over QQ.

Nothing in here rounds: every rank, inverse and projector is computed with
arbitrary-precision rationals.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Number = Union[int, Fraction]


def _qq(x: Number):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(int(x))


def _fraction(e) -> Fraction:
    r = QQ.to_sympy(e)
    return Fraction(int(r.p), int(r.q))


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ('_dm',)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        self._dm = dm.to_dense()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], ncols: int = None) -> 'RationalMatrix':
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = [[_qq(x) for x in r] for r in rows]
        return cls(DomainMatrix(data, (len(rows), ncols), QQ))

    @classmethod
    def column(cls, values: Iterable[Number]) -> 'RationalMatrix':
        return cls.from_rows([[v] for v in values], ncols=1)

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'RationalMatrix':
        return cls(DomainMatrix.zeros((nrows, ncols), QQ))

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    @property
    def nrows(self) -> int:
        return self._dm.shape[0]

    @property
    def ncols(self) -> int:
        return self._dm.shape[1]

    def to_fractions(self) -> List[List[Fraction]]:
        return [[_fraction(e) for e in row] for row in self._dm.to_list()]

    def entry(self, i: int, j: int) -> Fraction:
        return _fraction(self._dm.to_list()[i][j])

    @property
    def T(self) -> 'RationalMatrix':
        return RationalMatrix(self._dm.transpose())

    def __matmul__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        return RationalMatrix(self._dm.matmul(other._dm))

    def __add__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        return RationalMatrix(self._dm + other._dm)

    def __sub__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        return RationalMatrix(self._dm - other._dm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if 0 in self.shape:
            return True
        return (self._dm - other._dm).is_zero_matrix

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.to_fractions())))

    def is_zero(self) -> bool:
        return 0 in self.shape or self._dm.is_zero_matrix

    def columns(self, cols: Sequence[int]) -> 'RationalMatrix':
        if not cols:
            return RationalMatrix.zeros(self.nrows, 0)
        return RationalMatrix(self._dm.extract(list(range(self.nrows)), list(cols)))

    def hstack(self, *others: 'RationalMatrix') -> 'RationalMatrix':
        parts = [m for m in (self,) + others if m.ncols]
        if not parts:
            return RationalMatrix.zeros(self.nrows, 0)
        if len(parts) == 1:
            return parts[0]
        return RationalMatrix(parts[0]._dm.hstack(*[p._dm for p in parts[1:]]))

    def rref(self) -> Tuple['RationalMatrix', Tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns."""
        if 0 in self.shape:
            return self, ()
        reduced, pivots = self._dm.to_sparse().rref()
        return RationalMatrix(reduced), tuple(pivots)

    def rank(self) -> int:
        if 0 in self.shape:
            return 0
        return len(self.rref()[1])

    def inv(self) -> 'RationalMatrix':
        return RationalMatrix(self._dm.inv())

    def nullspace(self) -> 'RationalMatrix':
        """Rows form a basis of {x : self x = 0}."""
        ncols = self.ncols
        reduced, pivots = self.rref()
        rows = reduced._dm.to_list() if self.nrows else []
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            x = [QQ(0)] * ncols
            x[f] = QQ(1)
            for r, p in enumerate(pivots):
                x[p] = -rows[r][f]
            basis.append(x)
        return RationalMatrix(DomainMatrix(basis, (len(basis), ncols), QQ))

    def quadratic_form(self, y: 'RationalMatrix') -> Fraction:
        """y' M y for a column vector y."""
        value = y.T @ self @ y
        return value.entry(0, 0)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_fractions()})"


def projector(A: RationalMatrix) -> RationalMatrix:
    """Orthogonal projector onto the column space of A.

    Uses A's independent columns B, so P = B (B'B)^{-1} B'; the result does not
    depend on which g-inverse of A'A one would have picked.
    """
    n = A.nrows
    _, pivots = A.rref()
    if not pivots:
        return RationalMatrix.zeros(n, n)
    B = A.columns(pivots)
    return B @ (B.T @ B).inv() @ B.T


def residual(A: RationalMatrix, T: RationalMatrix) -> RationalMatrix:
    """(I - P_T) A."""
    if T.ncols == 0:
        return A
    return A - projector(T) @ A
