"""Relations between effects, and between effects and the block factor.

Every verdict is read off the integer incidence matrices of the plan:

    OTB      k N^{ab} = L^a (L^b)'
    PFC      n N^{ab} = r^a (r^b)'      (only when neither effect is constant)
    Aliased  N^{ab} has at most one nonzero per row and per column
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.design.effects import EffectModel, Pencil, all_pencils, effect_parse
from src.design.incidence import effect_block_matrix, incidence_matrix, replication_vector
from src.design.plan import Plan
from src.errors import EffectNameError, UnknownEffectNameError
from src.models.data_models import (
    FLAG_ORDER,
    AliasStructure,
    BlockVerdict,
    PairRelation,
    PartitionReport,
    RelationFlag,
    RelationMatrix,
)

logger = logging.getLogger(__name__)

PARTIAL_ALIAS_NOTE = 'partial aliasing: some levels identify each other'


def otb_holds(N: np.ndarray, L_a: np.ndarray, L_b: np.ndarray, k: int) -> bool:
    return bool(np.array_equal(k * N, L_a @ L_b.T))


def pfc_holds(N: np.ndarray, r_a: np.ndarray, r_b: np.ndarray, n: int) -> bool:
    return bool(np.array_equal(n * N, np.outer(r_a, r_b)))


def aliased_holds(N: np.ndarray) -> bool:
    nz = N != 0
    return bool(nz.any() and nz.sum(axis=1).max() <= 1 and nz.sum(axis=0).max() <= 1)


def is_constant(r: np.ndarray, n: int) -> bool:
    return bool((r == n).any())


def block_verdict(L: np.ndarray, n: int) -> BlockVerdict:
    """Verdict from an effect-vs-block matrix."""
    if is_constant(L.sum(axis=1), n):
        return BlockVerdict.CONSTANT_ON_PLAN
    if bool(((L != 0).sum(axis=0) == 1).all()):
        return BlockVerdict.CONFOUNDED_WITH_BLOCK
    return BlockVerdict.VARIES_WITHIN_BLOCKS


def _partially_aliased(N: np.ndarray) -> bool:
    nz = N != 0
    rows = nz.sum(axis=1) == 1
    cols = nz.sum(axis=0) == 1
    return bool((nz & rows[:, None] & cols[None, :]).any())


def relation_flags(N: np.ndarray, L_a: np.ndarray, L_b: np.ndarray,
                   n: int, k: int) -> Tuple[Tuple[RelationFlag, ...], Optional[str]]:
    """Flags for one pair, in report order, plus an optional note."""
    r_a = N.sum(axis=1)
    r_b = N.sum(axis=0)
    found = set()
    if aliased_holds(N):
        found.add(RelationFlag.ALIASED)
    if otb_holds(N, L_a, L_b, k):
        found.add(RelationFlag.OTB)
    if not is_constant(r_a, n) and not is_constant(r_b, n) and pfc_holds(N, r_a, r_b, n):
        found.add(RelationFlag.PFC)
    note = None
    if RelationFlag.ALIASED not in found and RelationFlag.OTB not in found:
        found.add(RelationFlag.NON_ORTHOGONAL)
        if _partially_aliased(N):
            note = PARTIAL_ALIAS_NOTE
    return tuple(f for f in FLAG_ORDER if f in found), note


def _distinct(a: Pencil, b: Pencil) -> None:
    if a == b:
        raise ValueError(f"Relations are defined between distinct effects, got {a} twice")


def otb_check(plan: Plan, a: Pencil, b: Pencil) -> bool:
    """Orthogonal through the block factor: k N^{ab} = L^a (L^b)'."""
    _distinct(a, b)
    return otb_holds(incidence_matrix(plan, a, b), effect_block_matrix(plan, a),
                     effect_block_matrix(plan, b), plan.k)


def pfc_check(plan: Plan, a: Pencil, b: Pencil) -> bool:
    """Proportional frequencies: n N^{ab} = r^a (r^b)'."""
    _distinct(a, b)
    return pfc_holds(incidence_matrix(plan, a, b), replication_vector(plan, a),
                     replication_vector(plan, b), plan.n)


def aliased_check(plan: Plan, a: Pencil, b: Pencil) -> bool:
    """Levels of a and b determine each other on the plan."""
    _distinct(a, b)
    return aliased_holds(incidence_matrix(plan, a, b))


def block_relation(plan: Plan, a: Pencil) -> BlockVerdict:
    return block_verdict(effect_block_matrix(plan, a), plan.n)


def uniform_incidence(plan: Plan, a: Pencil, b: Pencil) -> bool:
    """All entries of N^{ab}, L^a and L^b equal (sufficient for OTB)."""
    _distinct(a, b)
    mats = (incidence_matrix(plan, a, b), effect_block_matrix(plan, a), effect_block_matrix(plan, b))
    return all(bool((M == M.flat[0]).all()) for M in mats)


def pair_relation(plan: Plan, a: Pencil, b: Pencil) -> PairRelation:
    _distinct(a, b)
    N = incidence_matrix(plan, a, b)
    L_a = effect_block_matrix(plan, a)
    L_b = effect_block_matrix(plan, b)
    flags, note = relation_flags(N, L_a, L_b, plan.n, plan.k)
    return PairRelation(a.name, b.name, flags, N.tolist(), L_a.tolist(), L_b.tolist(), note)


class _LevelTable:
    """Levels and effect-vs-block matrices of many pencils, computed once."""

    def __init__(self, plan: Plan, pencils: Sequence[Pencil]):
        self.plan = plan
        self.levels: Dict[Pencil, np.ndarray] = {}
        self.blocks: Dict[Pencil, np.ndarray] = {}
        for p in pencils:
            lv = plan.levels(p)
            L = np.zeros((plan.s, plan.b), dtype=np.int64)
            np.add.at(L, (lv, plan.block_index), 1)
            self.levels[p] = lv
            self.blocks[p] = L

    def incidence(self, a: Pencil, b: Pencil) -> np.ndarray:
        N = np.zeros((self.plan.s, self.plan.s), dtype=np.int64)
        np.add.at(N, (self.levels[a], self.levels[b]), 1)
        return N

    def verdict(self, a: Pencil) -> BlockVerdict:
        return block_verdict(self.blocks[a], self.plan.n)

    def flags(self, a: Pencil, b: Pencil):
        return relation_flags(self.incidence(a, b), self.blocks[a], self.blocks[b],
                              self.plan.n, self.plan.k)


def relation_matrix(plan: Plan, model: EffectModel) -> RelationMatrix:
    """Every pair of model effects (in model order) and every block relation."""
    table = _LevelTable(plan, model.pencils)
    pairs: Dict[Tuple[str, str], PairRelation] = {}
    pencils = list(model)
    for i, a in enumerate(pencils):
        for b in pencils[i + 1:]:
            N = table.incidence(a, b)
            flags, note = relation_flags(N, table.blocks[a], table.blocks[b], plan.n, plan.k)
            pairs[(a.name, b.name)] = PairRelation(
                a.name, b.name, flags, N.tolist(),
                table.blocks[a].tolist(), table.blocks[b].tolist(), note,
            )
    verdicts = {p.name: table.verdict(p) for p in pencils}
    logger.debug("Relation matrix over %d effects, %d pairs", len(pencils), len(pairs))
    return RelationMatrix(model.names(), pairs, verdicts)


def alias_classes(plan: Plan, model: EffectModel) -> AliasStructure:
    """Transitive closure of aliasing among effects that vary within blocks."""
    table = _LevelTable(plan, model.pencils)
    constant, confounded, varying = [], [], []
    for p in model:
        verdict = table.verdict(p)
        if verdict == BlockVerdict.CONSTANT_ON_PLAN:
            constant.append(p)
        elif verdict == BlockVerdict.CONFOUNDED_WITH_BLOCK:
            confounded.append(p)
        else:
            varying.append(p)

    parent = list(range(len(varying)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(varying):
        for j in range(i + 1, len(varying)):
            if aliased_holds(table.incidence(a, varying[j])):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    grouped: Dict[int, List[str]] = {}
    for i, p in enumerate(varying):
        grouped.setdefault(find(i), []).append(p.name)
    classes = [grouped[root] for root in sorted(grouped)]
    return AliasStructure(
        classes=classes,
        constant=[p.name for p in constant],
        confounded=[p.name for p in confounded],
    )


def class_graph(plan: Plan, classes: Sequence[Sequence[Pencil]]) -> Set[Tuple[int, int]]:
    """Edges (i, j), i < j, between classes whose every cross pair is OTB."""
    table = _LevelTable(plan, [p for cls in classes for p in cls])
    edges = set()
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if all(
                otb_holds(table.incidence(a, b), table.blocks[a], table.blocks[b], plan.k)
                for a in classes[i] for b in classes[j]
            ):
                edges.add((i, j))
    return edges


def _resolve(names: Iterable[str], plan: Plan) -> List[Pencil]:
    out = []
    for name in names:
        try:
            out.append(effect_parse(name, plan.m, plan.field))
        except EffectNameError as exc:
            raise UnknownEffectNameError(f"Cannot resolve effect {name!r}: {exc}") from exc
    return out


def verify_partition(plan: Plan, partition: Sequence[Sequence[str]]) -> PartitionReport:
    """Check that every pair taken from two different classes is OTB."""
    classes = [_resolve(cls, plan) for cls in partition]
    table = _LevelTable(plan, list({p for cls in classes for p in cls}))
    violations = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            for a in classes[i]:
                for b in classes[j]:
                    if a == b:
                        violations.append((a.name, b.name, 'same effect in two classes'))
                        continue
                    flags, _ = table.flags(a, b)
                    if RelationFlag.OTB not in flags:
                        violations.append((a.name, b.name, ','.join(f.value for f in flags)))
    if violations:
        logger.info("Partition has %d non-OTB cross pairs", len(violations))
    return PartitionReport([[p.name for p in cls] for cls in classes], violations)


def _all_levels(plan: Plan) -> Tuple[List[Pencil], np.ndarray]:
    pencils = all_pencils(plan.m, plan.field)
    coeffs = np.array([p.coords for p in pencils], dtype=np.int64).reshape(len(pencils), plan.m)
    return pencils, (plan.run_array @ coeffs.T) % plan.s


def defining_words(plan: Plan) -> List[Pencil]:
    """Every pencil taking a single level on all runs."""
    pencils, levels = _all_levels(plan)
    constant = (levels == levels[0:1, :]).all(axis=0)
    return [p for p, c in zip(pencils, constant) if c]


def block_words(plan: Plan) -> List[Pencil]:
    """Every pencil constant within each block but not on the whole plan."""
    pencils, levels = _all_levels(plan)
    per_block = levels.reshape(plan.b, plan.k, len(pencils))
    within = (per_block == per_block[:, 0:1, :]).all(axis=(0, 1))
    constant = (levels == levels[0:1, :]).all(axis=0)
    return [p for p, w, c in zip(pencils, within, constant) if w and not c]


def format_relation_matrix(rm: RelationMatrix) -> str:
    """TSV sections for pairs and block relations."""
    lines = ['# pairs', '# effect_a\teffect_b\tflags']
    for rel in rm.pairs.values():
        row = f"{rel.a}\t{rel.b}\t{rel.flags_text()}"
        if rel.note:
            row += f"\t# {rel.note}"
        lines.append(row)
    lines.append('# blocks')
    lines.append('# effect\tverdict')
    for name in rm.effects:
        lines.append(f"{name}\t{rm.block_relations[name].value}")
    return '\n'.join(lines) + '\n'
