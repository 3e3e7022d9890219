"""Expanding a plan along a subspace V of F_s^m.

The expanded plan has one block v + B_j for every base block B_j and every
v in V, ordered with j outer and v inner (members(V) order). Its incidence
data follow from the base plan's without building it; the enumeration path
(`expand` followed by the functions in `incidence`) serves as the oracle.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.gfvec import FieldVector, Subspace, members, orthocomplement, rref
from src.design.effects import Pencil, all_pencils
from src.design.incidence import effect_block_matrix, incidence_matrix, replication_vector
from src.design.plan import Plan
from src.design.relations import aliased_holds
from src.errors import DimensionMismatchError, TooLargeError
from src.models.data_models import IncidenceBundle, Prediction

logger = logging.getLogger(__name__)


def _check_space(plan_or_field, m: int, V: Subspace) -> None:
    field = plan_or_field.field
    if V.field != field or V.ambient_dim != m:
        raise DimensionMismatchError(
            f"Subspace over F_{V.field.order}^{V.ambient_dim} does not match F_{field.order}^{m}"
        )


def expand(plan: Plan, V: Subspace, max_dim: Optional[int] = None) -> Plan:
    """The plan with blocks {v + x : x in B_j}, j over base blocks, v over V."""
    _check_space(plan, plan.m, V)
    if max_dim is None:
        from src.config import get_config
        max_dim = get_config().max_expansion_dim
    if V.dim > max_dim:
        raise TooLargeError(f"Expansion along a {V.dim}-dim subspace exceeds the limit {max_dim}")
    shifts = members(V)
    blocks = tuple(
        tuple(v + x for x in block)
        for block in plan.blocks
        for v in shifts
    )
    logger.debug("Expanded %d blocks along dim-%d subspace into %d blocks",
                 plan.b, V.dim, len(blocks))
    return Plan(plan.field, plan.m, blocks)


@dataclass(frozen=True)
class ExpandedPlan:
    """An expansion together with the base plan and subspace it came from."""

    base: Plan
    V: Subspace
    result: Plan

    @classmethod
    def build(cls, base: Plan, V: Subspace) -> 'ExpandedPlan':
        return cls(base, V, expand(base, V))

    def origin(self, index: int) -> Tuple[int, FieldVector]:
        """(base block, shift) that produced result block `index`."""
        per_base = self.base.field.order ** self.V.dim
        return index // per_base, members(self.V)[index % per_base]


def _class_scalar(a: Pencil, b: Pencil, V: Subspace) -> Optional[int]:
    """c with a - c b in V-perp, for a, b outside V-perp; None when no such c exists."""
    fa = V.functional(a.vector)
    fb = V.functional(b.vector)
    field = V.field
    pivot = next(i for i, x in enumerate(fb) if x)
    c = field.mul(fa[pivot], field.inv(fb[pivot]))
    if c and all(x == field.mul(c, y) for x, y in zip(fa, fb)):
        return c
    return None


def slice_count(V: Subspace, a: Pencil, b: Pencil, alpha: int, beta: int) -> int:
    """|{v in V : a'v = alpha, b'v = beta}| by case analysis."""
    s = V.field.order
    t = V.dim
    a_perp = V.is_orthogonal(a.vector)
    b_perp = V.is_orthogonal(b.vector)
    if a_perp and b_perp:
        return s ** t if alpha == 0 and beta == 0 else 0
    if a_perp:
        return s ** (t - 1) if alpha == 0 else 0
    if b_perp:
        return s ** (t - 1) if beta == 0 else 0
    c = _class_scalar(a, b, V)
    if c is not None:
        return s ** (t - 1) if alpha == V.field.mul(c, beta) else 0
    return s ** (t - 2)


def slice_count_direct(V: Subspace, a: Pencil, b: Pencil, alpha: int, beta: int) -> int:
    return sum(
        1 for v in members(V) if a.vector.dot(v) == alpha and b.vector.dot(v) == beta
    )


def transform_incidence(M: np.ndarray, a: Pencil, b: Pencil, V: Subspace) -> np.ndarray:
    """M~[alpha, beta] = sum over v in V of M[alpha - a'v, beta - b'v]."""
    s = V.field.order
    t = V.dim
    M = np.asarray(M, dtype=np.int64)
    a_perp = V.is_orthogonal(a.vector)
    b_perp = V.is_orthogonal(b.vector)
    if a_perp and b_perp:
        return s ** t * M
    if a_perp:
        return s ** (t - 1) * np.repeat(M.sum(axis=1)[:, None], s, axis=1)
    if b_perp:
        return s ** (t - 1) * np.repeat(M.sum(axis=0)[None, :], s, axis=0)
    c = _class_scalar(a, b, V)
    if c is None:
        return s ** (t - 2) * int(M.sum()) * np.ones((s, s), dtype=np.int64)
    out = np.zeros((s, s), dtype=np.int64)
    for u in range(s):
        out += np.roll(np.roll(M, (c * u) % s, axis=0), u, axis=1)
    return s ** (t - 1) * out


def transform_incidence_direct(M: np.ndarray, a: Pencil, b: Pencil, V: Subspace) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    out = np.zeros_like(M)
    for v in members(V):
        out += np.roll(np.roll(M, a.vector.dot(v), axis=0), b.vector.dot(v), axis=1)
    return out


def _expanded_replication(r: np.ndarray, a: Pencil, V: Subspace, n: int) -> np.ndarray:
    s = V.field.order
    t = V.dim
    if V.is_orthogonal(a.vector):
        return s ** t * r
    return np.full(s, s ** (t - 1) * n, dtype=np.int64)


def _expanded_block_matrix(L: np.ndarray, a: Pencil, V: Subspace) -> np.ndarray:
    shifts = [a.vector.dot(v) for v in members(V)]
    columns = [np.roll(L[:, j], shift) for j in range(L.shape[1]) for shift in shifts]
    return np.stack(columns, axis=1).astype(np.int64)


def expanded_incidence(plan: Plan, V: Subspace, a: Pencil, b: Optional[Pencil] = None) -> IncidenceBundle:
    """Incidence data of expand(plan, V) from the base plan's, without expanding."""
    _check_space(plan, plan.m, V)
    n = plan.n * plan.s ** V.dim
    bundle = IncidenceBundle(
        a=a.name,
        n=n,
        k=plan.k,
        r_a=_expanded_replication(replication_vector(plan, a), a, V, plan.n),
        L_a=_expanded_block_matrix(effect_block_matrix(plan, a), a, V),
    )
    if b is not None:
        bundle.b = b.name
        bundle.r_b = _expanded_replication(replication_vector(plan, b), b, V, plan.n)
        bundle.L_b = _expanded_block_matrix(effect_block_matrix(plan, b), b, V)
        bundle.N_ab = transform_incidence(incidence_matrix(plan, a, b), a, b, V)
    return bundle


@dataclass(frozen=True)
class EffectClassPartition:
    """Pencils grouped by the subspace <a> + V-perp."""

    V: Subspace
    classes: Tuple[Tuple[Pencil, ...], ...]

    def class_of(self, p: Pencil) -> int:
        for i, members_ in enumerate(self.classes):
            if p in members_:
                return i
        raise KeyError(p.name)

    def same_class(self, a: Pencil, b: Pencil) -> bool:
        return self.class_of(a) == self.class_of(b)

    def names(self) -> List[List[str]]:
        return [[p.name for p in cls] for cls in self.classes]


def class_key(a: Pencil, perp: Subspace) -> Subspace:
    return rref([a.vector] + list(perp.basis), perp.field, perp.ambient_dim)


def effect_classes(V: Subspace, m: Optional[int] = None) -> EffectClassPartition:
    """The partition of every pencil of F_s^m into effect classes relative to V."""
    if m is not None and m != V.ambient_dim:
        raise DimensionMismatchError(f"Subspace lives in dimension {V.ambient_dim}, not {m}")
    perp = orthocomplement(V)
    grouped: Dict[Subspace, List[Pencil]] = {}
    for p in all_pencils(V.ambient_dim, V.field):
        grouped.setdefault(class_key(p, perp), []).append(p)
    return EffectClassPartition(V, tuple(tuple(ps) for ps in grouped.values()))


def predict_relation(plan: Plan, V: Subspace, a: Pencil, b: Pencil) -> Prediction:
    """What the base plan and V alone say about (a, b) on expand(plan, V)."""
    if a == b:
        raise ValueError(f"Relations are defined between distinct effects, got {a} twice")
    _check_space(plan, plan.m, V)
    a_perp = V.is_orthogonal(a.vector)
    b_perp = V.is_orthogonal(b.vector)
    if a_perp and b_perp:
        return Prediction.SAME_AS_BASE
    if a_perp or b_perp:
        return Prediction.OTB
    c = _class_scalar(a, b, V)
    if c is None:
        return Prediction.OTB
    if V.is_zero() or not aliased_holds(incidence_matrix(plan, a, b)):
        return Prediction.NO_CLAIM
    difference = a.vector - b.vector.scale(c)
    levels = (plan.run_array @ np.array(difference.coords, dtype=np.int64)) % plan.s
    if bool((levels == levels[0]).all()):
        # the pair stays aliased after expansion
        return Prediction.NO_CLAIM
    return Prediction.NOT_ALIASED
