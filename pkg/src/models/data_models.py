"""Data models for plan analysis reports."""

from dataclasses import dataclass, asdict, field
from enum import Enum
from typing import List, Dict, Optional, Any, Tuple
import json

import numpy as np


class RelationFlag(str, Enum):
    ALIASED = 'Aliased'
    OTB = 'OTB'
    PFC = 'PFC'
    NON_ORTHOGONAL = 'NonOrthogonal'


FLAG_ORDER = [RelationFlag.ALIASED, RelationFlag.OTB, RelationFlag.PFC, RelationFlag.NON_ORTHOGONAL]


class BlockVerdict(str, Enum):
    CONSTANT_ON_PLAN = 'ConstantOnPlan'
    CONFOUNDED_WITH_BLOCK = 'ConfoundedWithBlock'
    VARIES_WITHIN_BLOCKS = 'VariesWithinBlocks'


class Prediction(str, Enum):
    OTB = 'OTB'
    SAME_AS_BASE = 'SameAsBase'
    NOT_ALIASED = 'NotAliased'
    NO_CLAIM = 'NoClaim'


class EstimabilityVerdict(str, Enum):
    ESTIMABLE = 'Estimable'
    PARTIALLY_ESTIMABLE = 'PartiallyEstimable'
    NOT_ESTIMABLE = 'NotEstimable'


class ClaimStatus(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'
    DISCREPANCY = 'DISCREPANCY-DOCUMENTED'


def _matrix(value: Optional[np.ndarray]) -> Optional[List[List[int]]]:
    return None if value is None else np.asarray(value).tolist()


def format_matrix(value: np.ndarray) -> str:
    """Row-major bracketed integer form, e.g. [[1,2],[2,0]]."""
    rows = np.asarray(value).tolist()
    if np.asarray(value).ndim == 1:
        return '[' + ','.join(str(int(x)) for x in rows) + ']'
    return '[' + ','.join('[' + ','.join(str(int(x)) for x in row) + ']' for row in rows) + ']'


@dataclass
class IncidenceBundle:
    """Replication vectors and incidence matrices of one or two effects."""

    a: str
    n: int
    k: int
    r_a: np.ndarray
    L_a: np.ndarray
    b: Optional[str] = None
    r_b: Optional[np.ndarray] = None
    L_b: Optional[np.ndarray] = None
    N_ab: Optional[np.ndarray] = None

    def marginals_hold(self) -> bool:
        """Row/column-sum identities linking r, N and L."""
        ok = int(self.r_a.sum()) == self.n
        ok = ok and np.array_equal(self.L_a.sum(axis=1), self.r_a)
        ok = ok and bool(np.all(self.L_a.sum(axis=0) == self.k))
        if self.N_ab is not None:
            ok = ok and np.array_equal(self.N_ab.sum(axis=1), self.r_a)
            ok = ok and np.array_equal(self.N_ab.sum(axis=0), self.r_b)
            ok = ok and np.array_equal((self.L_a @ self.L_b.T).sum(axis=1), self.k * self.r_a)
        return bool(ok)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'a': self.a,
            'b': self.b,
            'n': self.n,
            'k': self.k,
            'r_a': _matrix(self.r_a),
            'r_b': _matrix(self.r_b),
            'N_ab': _matrix(self.N_ab),
            'L_a': _matrix(self.L_a),
            'L_b': _matrix(self.L_b),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'IncidenceBundle':
        """Create instance from dictionary."""
        def arr(key):
            return None if data.get(key) is None else np.array(data[key], dtype=np.int64)
        return cls(
            a=data['a'], n=data['n'], k=data['k'], r_a=arr('r_a'), L_a=arr('L_a'),
            b=data.get('b'), r_b=arr('r_b'), L_b=arr('L_b'), N_ab=arr('N_ab'),
        )


@dataclass
class PairRelation:
    """Relation between two effects on one plan, with the matrices it was read from."""

    a: str
    b: str
    flags: Tuple[RelationFlag, ...]
    N_ab: List[List[int]]
    L_a: List[List[int]]
    L_b: List[List[int]]
    note: Optional[str] = None

    def has(self, flag: RelationFlag) -> bool:
        return flag in self.flags

    def flags_text(self) -> str:
        return ','.join(f.value for f in self.flags)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data = asdict(self)
        data['flags'] = [f.value for f in self.flags]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PairRelation':
        """Create instance from dictionary."""
        data = dict(data)
        data['flags'] = tuple(RelationFlag(f) for f in data['flags'])
        return cls(**data)


@dataclass
class RelationMatrix:
    """All pairwise relations over a model plus each effect's relation to blocks."""

    effects: List[str]
    pairs: Dict[Tuple[str, str], PairRelation]
    block_relations: Dict[str, BlockVerdict]

    def get(self, a: str, b: str) -> PairRelation:
        if (a, b) in self.pairs:
            return self.pairs[(a, b)]
        rel = self.pairs[(b, a)]
        return PairRelation(a, b, rel.flags, [list(r) for r in zip(*rel.N_ab)], rel.L_b, rel.L_a, rel.note)

    def is_symmetric(self) -> bool:
        return all(
            self.get(a, b).flags == self.get(b, a).flags
            for i, a in enumerate(self.effects) for b in self.effects[i + 1:]
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'effects': self.effects,
            'pairs': [rel.to_dict() for rel in self.pairs.values()],
            'block_relations': {k: v.value for k, v in self.block_relations.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RelationMatrix':
        """Create instance from dictionary."""
        pairs = [PairRelation.from_dict(p) for p in data['pairs']]
        return cls(
            effects=list(data['effects']),
            pairs={(p.a, p.b): p for p in pairs},
            block_relations={k: BlockVerdict(v) for k, v in data['block_relations'].items()},
        )


@dataclass
class AliasStructure:
    """Alias classes of the effects that vary within blocks."""

    classes: List[List[str]]
    constant: List[str]
    confounded: List[str]

    def class_of(self, name: str) -> Optional[int]:
        for i, members in enumerate(self.classes):
            if name in members:
                return i
        return None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AliasStructure':
        """Create instance from dictionary."""
        return cls(**data)


@dataclass
class PartitionReport:
    """Outcome of checking inter-class orthogonality of a partition."""

    classes: List[List[str]]
    violations: List[Tuple[str, str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'classes': self.classes,
            'passed': self.passed,
            'violations': [list(v) for v in self.violations],
        }


@dataclass
class EstimabilityEntry:
    effect: str
    verdict: EstimabilityVerdict
    df: int


@dataclass
class EstimabilityReport:
    """Per-effect estimability under the full model with blocks."""

    s: int
    entries: List[EstimabilityEntry]
    treatment_df: int

    @property
    def estimable(self) -> int:
        return sum(e.verdict == EstimabilityVerdict.ESTIMABLE for e in self.entries)

    @property
    def partial(self) -> int:
        return sum(e.verdict == EstimabilityVerdict.PARTIALLY_ESTIMABLE for e in self.entries)

    @property
    def lost(self) -> int:
        return sum(e.verdict == EstimabilityVerdict.NOT_ESTIMABLE for e in self.entries)

    @property
    def total_df(self) -> int:
        return sum(e.df for e in self.entries)

    def verdict_of(self, effect: str) -> EstimabilityVerdict:
        for e in self.entries:
            if e.effect == effect:
                return e.verdict
        raise KeyError(effect)

    def totals_line(self) -> str:
        return f"estimable={self.estimable} partial={self.partial} lost={self.lost}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            's': self.s,
            'treatment_df': self.treatment_df,
            'entries': [
                {'effect': e.effect, 'verdict': e.verdict.value, 'df': e.df} for e in self.entries
            ],
            'totals': {'estimable': self.estimable, 'partial': self.partial, 'lost': self.lost},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EstimabilityReport':
        """Create instance from dictionary."""
        return cls(
            s=data['s'],
            treatment_df=data['treatment_df'],
            entries=[
                EstimabilityEntry(e['effect'], EstimabilityVerdict(e['verdict']), e['df'])
                for e in data['entries']
            ],
        )

    def to_json(self) -> str:
        """Convert to JSON string."""
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class SelectionResult:
    """Effects kept by the greedy joint-estimability pass, in model order."""

    selected: List[str]
    skipped: List[str]
    df_used: int
    df_budget: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)


@dataclass
class CondOrthResult:
    """Both sides of the two sum-of-squares equivalences for one effect."""

    effect: str
    ss_equal_a: bool
    pfc_all: bool
    ss_equal_b: bool
    otb_all: bool

    @property
    def consistent(self) -> bool:
        return self.ss_equal_a == self.pfc_all and self.ss_equal_b == self.otb_all

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)


@dataclass
class SubspaceScore:
    """Quality of the plan obtained by expanding along one subspace."""

    subspace: str
    order_key: Tuple
    n_blocks: int
    n_estimable: int
    n_partial: int
    n_confounded: int
    n_constant: int
    class_sizes: List[int]

    def rank_key(self) -> Tuple:
        return (-self.n_estimable, self.n_confounded, self.order_key)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data = asdict(self)
        data.pop('order_key')
        return data


@dataclass
class ClaimResult:
    """One checked statement about a catalog plan."""

    claim_id: str
    anchor: str
    computed: str
    claimed: str
    status: ClaimStatus
    note: str = ''

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data = asdict(self)
        data['status'] = self.status.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ClaimResult':
        """Create instance from dictionary."""
        data = dict(data)
        data['status'] = ClaimStatus(data['status'])
        return cls(**data)


@dataclass
class ClaimReport:
    """Every catalog claim with its computed value and status."""

    results: List[ClaimResult]

    @property
    def failures(self) -> List[ClaimResult]:
        return [r for r in self.results if r.status == ClaimStatus.FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def count(self, status: ClaimStatus) -> int:
        return sum(r.status == status for r in self.results)

    def get(self, claim_id: str) -> ClaimResult:
        for r in self.results:
            if r.claim_id == claim_id:
                return r
        raise KeyError(claim_id)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'results': [r.to_dict() for r in self.results],
            'summary': {s.value: self.count(s) for s in ClaimStatus},
        }

    def to_json(self) -> str:
        """Convert to JSON string."""
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, json_str: str) -> 'ClaimReport':
        """Create instance from JSON string."""
        data = json.loads(json_str)
        return cls([ClaimResult.from_dict(r) for r in data['results']])
