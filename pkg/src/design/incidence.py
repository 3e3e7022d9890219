"""Replication vectors and incidence matrices of effects on a plan.

Rows and columns are indexed by levels in field order 0..s-1 and, for the
effect-vs-block matrix, by blocks in plan order. All counts are exact int64.
"""

import numpy as np

from src.design.effects import Pencil
from src.design.plan import Plan
from src.models.data_models import IncidenceBundle


def replication_vector(plan: Plan, a: Pencil) -> np.ndarray:
    """r^a_t = number of runs with a'x = t."""
    return np.bincount(plan.levels(a), minlength=plan.s).astype(np.int64)


def incidence_matrix(plan: Plan, a: Pencil, b: Pencil) -> np.ndarray:
    """s x s counts of runs at level (alpha of a, beta of b)."""
    out = np.zeros((plan.s, plan.s), dtype=np.int64)
    np.add.at(out, (plan.levels(a), plan.levels(b)), 1)
    return out


def effect_block_matrix(plan: Plan, a: Pencil) -> np.ndarray:
    """s x b counts of runs of block j at level alpha of a."""
    out = np.zeros((plan.s, plan.b), dtype=np.int64)
    np.add.at(out, (plan.levels(a), plan.block_index), 1)
    return out


def incidence_bundle(plan: Plan, a: Pencil, b: Pencil = None) -> IncidenceBundle:
    """Everything the relation tests read, for one effect or a pair."""
    bundle = IncidenceBundle(
        a=a.name,
        n=plan.n,
        k=plan.k,
        r_a=replication_vector(plan, a),
        L_a=effect_block_matrix(plan, a),
    )
    if b is not None:
        bundle.b = b.name
        bundle.r_b = replication_vector(plan, b)
        bundle.L_b = effect_block_matrix(plan, b)
        bundle.N_ab = incidence_matrix(plan, a, b)
    return bundle
