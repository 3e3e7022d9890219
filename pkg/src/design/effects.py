"""Factorial effects as pencils of parallel hyperplanes.

An effect E_a is identified with the pencil {a'x = t : t in F}; a and p*a
(p != 0) give the same pencil, so every pencil is stored by the representative
whose first nonzero coordinate is 1. Names use factor letters A..Z with "^e"
exponents, e.g. "BD^2" for (0,1,0,2,0).
"""

import string
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from src.algebra.gfvec import Field, FieldVector
from src.errors import (
    BadExponentError,
    DimensionMismatchError,
    DuplicateFactorError,
    EffectNameError,
    EmptyNameError,
    TooLargeError,
    UnknownFactorError,
    ZeroVectorError,
)

FACTOR_LETTERS = string.ascii_uppercase
MAX_PENCIL_ENUMERATION = 1_000_000


@dataclass(frozen=True)
class Pencil:
    """A canonical nonzero coefficient vector: first nonzero coordinate is 1."""

    vector: FieldVector

    def __post_init__(self):
        lead = next((c for c in self.vector.coords if c), None)
        if lead is None:
            raise ZeroVectorError("The zero vector does not define an effect")
        if lead != 1:
            raise ValueError(f"Pencil representative {self.vector} is not canonical")

    @property
    def field(self) -> Field:
        return self.vector.field

    @property
    def m(self) -> int:
        return self.vector.m

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.vector.coords

    @property
    def factors(self) -> Tuple[int, ...]:
        """Positions of the factors involved."""
        return tuple(i for i, c in enumerate(self.coords) if c)

    @property
    def order(self) -> int:
        """1 for a main effect, 2 for a two-factor interaction, ..."""
        return len(self.factors)

    def sort_key(self) -> Tuple:
        exps = tuple(self.coords[i] for i in self.factors)
        return (self.order, self.factors, exps)

    def level(self, run: FieldVector) -> int:
        return level_of(self, run)

    @property
    def name(self) -> str:
        return effect_print(self)

    def __str__(self) -> str:
        return self.name


def pencil_canonical(a: FieldVector) -> Pencil:
    """Scale a so that its first nonzero coordinate is 1."""
    lead = next((c for c in a.coords if c), None)
    if lead is None:
        raise ZeroVectorError("The zero vector does not define an effect")
    return Pencil(a.scale(a.field.inv(lead)))


def effect_parse(name: str, m: int, field: Field) -> Pencil:
    """Parse "AB^2D" style names into the canonical pencil."""
    text = name.strip()
    if not text:
        raise EmptyNameError("Empty effect name")
    coords = [0] * m
    last = -1
    pos = 0
    while pos < len(text):
        letter = text[pos]
        if letter not in FACTOR_LETTERS:
            raise UnknownFactorError(f"Unexpected character {letter!r} in {name!r}")
        index = FACTOR_LETTERS.index(letter)
        if index >= m:
            raise UnknownFactorError(f"Factor {letter} does not exist with m={m}")
        pos += 1
        exponent = 1
        if pos < len(text) and text[pos] == '^':
            pos += 1
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if start == pos:
                raise BadExponentError(f"Missing exponent after {letter}^ in {name!r}")
            exponent = int(text[start:pos])
            if not 1 <= exponent < field.order:
                raise BadExponentError(f"Exponent {exponent} outside 1..{field.order - 1} in {name!r}")
        if coords[index]:
            raise DuplicateFactorError(f"Factor {letter} repeated in {name!r}")
        if index < last:
            raise EffectNameError(f"Factors must appear in increasing order: {name!r}")
        coords[index] = exponent
        last = index
    return pencil_canonical(FieldVector(field, tuple(coords)))


def effect_print(p: Pencil) -> str:
    parts = []
    for i, c in enumerate(p.coords):
        if c == 1:
            parts.append(FACTOR_LETTERS[i])
        elif c:
            parts.append(f"{FACTOR_LETTERS[i]}^{c}")
    return ''.join(parts)


def level_of(p: Pencil, run: FieldVector) -> int:
    """The level a'x of effect p at run x."""
    if p.m != run.m or p.field != run.field:
        raise DimensionMismatchError(f"Run {run} does not match effect {p}")
    return p.vector.dot(run)


@dataclass(frozen=True)
class EffectModel:
    """An ordered set of pencils believed to be present."""

    m: int
    field: Field
    pencils: Tuple[Pencil, ...]

    def __post_init__(self):
        if len(set(self.pencils)) != len(self.pencils):
            raise ValueError("Effect model contains a pencil twice")
        for p in self.pencils:
            if p.m != self.m or p.field != self.field:
                raise DimensionMismatchError(f"Effect {p} is not over F_{self.field.order}^{self.m}")

    @classmethod
    def from_names(cls, names: Iterable[str], m: int, field: Field) -> 'EffectModel':
        return cls(m, field, tuple(effect_parse(n, m, field) for n in names))

    def __iter__(self) -> Iterator[Pencil]:
        return iter(self.pencils)

    def __len__(self) -> int:
        return len(self.pencils)

    def __contains__(self, p: object) -> bool:
        return p in self.pencils

    def index(self, p: Pencil) -> int:
        return self.pencils.index(p)

    def names(self) -> List[str]:
        return [p.name for p in self.pencils]

    def without(self, p: Pencil) -> 'EffectModel':
        return EffectModel(self.m, self.field, tuple(q for q in self.pencils if q != p))

    def lookup(self) -> Dict[str, Pencil]:
        return {p.name: p for p in self.pencils}


def _unit(field: Field, m: int, entries: Dict[int, int]) -> Pencil:
    return Pencil(FieldVector(field, tuple(entries.get(i, 0) for i in range(m))))


def model_mains(m: int, field: Field) -> EffectModel:
    return EffectModel(m, field, tuple(_unit(field, m, {i: 1}) for i in range(m)))


def model_mains_and_2fi(m: int, field: Field) -> EffectModel:
    """Main effects, then every two-factor pencil A_i A_j^e (i < j, e in 1..s-1)."""
    if m < 1:
        raise ValueError("A model needs at least one factor")
    pencils = [_unit(field, m, {i: 1}) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            for e in field.nonzero():
                pencils.append(_unit(field, m, {i: 1, j: e}))
    return EffectModel(m, field, tuple(pencils))


def model_from_flag(flag: str, m: int, field: Field) -> EffectModel:
    if flag == 'mains':
        return model_mains(m, field)
    if flag == 'mains+2fi':
        return model_mains_and_2fi(m, field)
    raise ValueError(f"Unknown model {flag!r}; use 'mains' or 'mains+2fi'")


def all_pencils(m: int, field: Field) -> List[Pencil]:
    """Every pencil of F_s^m, in graded lexicographic order."""
    s = field.order
    if s ** m > MAX_PENCIL_ENUMERATION:
        raise TooLargeError(f"F_{s}^{m} has too many pencils to enumerate")
    out = []
    for coords in product(range(s), repeat=m):
        lead = next((c for c in coords if c), None)
        if lead == 1:
            out.append(Pencil(FieldVector(field, coords)))
    return sorted(out, key=Pencil.sort_key)


def parse_effect_list(names: Sequence[str], m: int, field: Field) -> List[Pencil]:
    return [effect_parse(n, m, field) for n in names]
