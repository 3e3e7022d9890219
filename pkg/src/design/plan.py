"""Blocked plans and the line-oriented plan file format.

Format (v1), '#' starts a comment, blank lines are ignored:

    s=3 m=4 b=2 k=4
    block: 0000 1110 1201 2011
    block: 0212 0121 2102 2220
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from src.algebra.gfvec import Field, FieldVector, field_new
from src.design.effects import Pencil
from src.errors import (
    BadHeaderError,
    BlockCountMismatchError,
    BlockSizeMismatchError,
    DimensionMismatchError,
    PlanFormatError,
    RunLengthMismatchError,
    SymbolOutOfFieldError,
)

logger = logging.getLogger(__name__)

HEADER_RE = re.compile(r'^s=(\d+)\s+m=(\d+)\s+b=(\d+)\s+k=(\d+)$')
BLOCK_PREFIX = 'block:'


@dataclass(frozen=True)
class Plan:
    """b blocks of k runs each; runs are points of F_s^m and may repeat."""

    field: Field
    m: int
    blocks: Tuple[Tuple[FieldVector, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("A plan needs at least one block")
        k = len(self.blocks[0])
        if k < 1:
            raise ValueError("Blocks must contain at least one run")
        for j, block in enumerate(self.blocks):
            if len(block) != k:
                raise BlockSizeMismatchError(f"Block {j + 1} has {len(block)} runs, expected {k}")
            for run in block:
                if run.m != self.m or run.field != self.field:
                    raise RunLengthMismatchError(f"Run {run} is not a point of F_{self.field.order}^{self.m}")

    @property
    def s(self) -> int:
        return self.field.order

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    @property
    def n(self) -> int:
        return self.b * self.k

    @property
    def runs(self) -> List[FieldVector]:
        return [run for block in self.blocks for run in block]

    @cached_property
    def run_array(self) -> np.ndarray:
        """n x m integer array of runs in block order."""
        return np.array([run.coords for run in self.runs], dtype=np.int64).reshape(self.n, self.m)

    @cached_property
    def block_index(self) -> np.ndarray:
        return np.repeat(np.arange(self.b, dtype=np.int64), self.k)

    def levels(self, a: Pencil) -> np.ndarray:
        """Level a'x of every run, in run order."""
        if a.m != self.m or a.field != self.field:
            raise DimensionMismatchError(f"Effect {a} does not match a plan over F_{self.s}^{self.m}")
        return (self.run_array @ np.array(a.coords, dtype=np.int64)) % self.s

    @classmethod
    def from_factor_rows(cls, field: Field, rows: Sequence[str]) -> 'Plan':
        """Build a plan from a printed table: one string per factor, blocks split by '|'."""
        per_factor = [[blk.strip() for blk in row.split('|')] for row in rows]
        b = len(per_factor[0])
        blocks = []
        for j in range(b):
            columns = [factor[j] for factor in per_factor]
            k = len(columns[0])
            runs = tuple(
                FieldVector(field, tuple(int(col[u]) for col in columns)) for u in range(k)
            )
            blocks.append(runs)
        return cls(field, len(rows), tuple(blocks))

    def factor_row(self, i: int) -> str:
        """Levels of factor i across the plan, blocks separated by '|'."""
        return '|'.join(''.join(str(run.coords[i]) for run in block) for block in self.blocks)


def parse_plan(text: str) -> Plan:
    """Read a plan in file format v1."""
    lines = []
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise BadHeaderError("Plan text is empty")
    match = HEADER_RE.match(lines[0])
    if not match:
        raise BadHeaderError(f"Expected 's=<int> m=<int> b=<int> k=<int>', got {lines[0]!r}")
    s, m, b, k = (int(g) for g in match.groups())
    if s > 10:
        raise BadHeaderError(f"Plan files support s <= 10, got s={s}")
    if m < 1 or b < 1 or k < 1:
        raise BadHeaderError(f"m, b and k must be positive: {lines[0]!r}")
    field = field_new(s)

    block_lines = lines[1:]
    if len(block_lines) != b:
        raise BlockCountMismatchError(f"Header declares b={b} blocks, found {len(block_lines)}")
    blocks = []
    for j, line in enumerate(block_lines, start=1):
        if not line.startswith(BLOCK_PREFIX):
            raise PlanFormatError(f"Line for block {j} must start with '{BLOCK_PREFIX}': {line!r}")
        tokens = line[len(BLOCK_PREFIX):].split()
        if len(tokens) != k:
            raise BlockSizeMismatchError(f"Block {j} has {len(tokens)} runs, header declares k={k}")
        runs = []
        for token in tokens:
            if len(token) != m:
                raise RunLengthMismatchError(f"Run {token!r} in block {j} does not have m={m} symbols")
            if not token.isdigit() or any(int(ch) >= s for ch in token):
                raise SymbolOutOfFieldError(f"Run {token!r} in block {j} has a symbol outside F_{s}")
            runs.append(FieldVector(field, tuple(int(ch) for ch in token)))
        blocks.append(tuple(runs))
    plan = Plan(field, m, tuple(blocks))
    logger.debug("Parsed plan s=%d m=%d b=%d k=%d", s, m, b, k)
    return plan


def serialize_plan(plan: Plan) -> str:
    """Canonical file text: header, then one 'block:' line per block."""
    lines = [f"s={plan.s} m={plan.m} b={plan.b} k={plan.k}"]
    for block in plan.blocks:
        lines.append(BLOCK_PREFIX + ' ' + ' '.join(run.to_string() for run in block))
    return '\n'.join(lines) + '\n'


def concatenate(first: Plan, second: Plan) -> Plan:
    """Blocks of `first` followed by the blocks of `second`."""
    if first.field != second.field or first.m != second.m or first.k != second.k:
        raise DimensionMismatchError("Only plans with equal s, m and k can be joined")
    return Plan(first.field, first.m, first.blocks + second.blocks)


def delete_factor(plan: Plan, index: int) -> Plan:
    """Drop factor `index` from every run."""
    if not 0 <= index < plan.m or plan.m == 1:
        raise DimensionMismatchError(f"Cannot delete factor {index} from a plan with m={plan.m}")
    blocks = tuple(
        tuple(FieldVector(plan.field, run.coords[:index] + run.coords[index + 1:]) for run in block)
        for block in plan.blocks
    )
    return Plan(plan.field, plan.m - 1, blocks)


def add_factor(plan: Plan, copy_of: int) -> Plan:
    """Append a new last factor whose levels repeat those of factor `copy_of`."""
    if not 0 <= copy_of < plan.m:
        raise DimensionMismatchError(f"No factor {copy_of} in a plan with m={plan.m}")
    blocks = tuple(
        tuple(FieldVector(plan.field, run.coords + (run.coords[copy_of],)) for run in block)
        for block in plan.blocks
    )
    return Plan(plan.field, plan.m + 1, blocks)
