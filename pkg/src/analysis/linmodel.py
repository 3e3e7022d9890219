"""Exact linear-model analysis of blocked plans.

Model terms are pencils plus the two special terms MEAN (the all-ones
column) and BLOCKS (block indicators). Everything is computed over the
rationals; two sums of squares agree for every response exactly when their
projectors are equal as rational matrices.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from src.algebra.rational import RationalMatrix, projector, residual
from src.design.effects import EffectModel, Pencil, effect_parse
from src.design.incidence import effect_block_matrix, incidence_matrix, replication_vector
from src.design.plan import Plan
from src.design.relations import otb_holds, pfc_holds
from src.models.data_models import (
    CondOrthResult,
    EstimabilityEntry,
    EstimabilityReport,
    EstimabilityVerdict,
    SelectionResult,
)

logger = logging.getLogger(__name__)

MEAN = 'MEAN'
BLOCKS = 'BLOCKS'

Term = Union[Pencil, str]
Number = Union[int, Fraction]


def _resolve(plan: Plan, term: Term) -> Term:
    if isinstance(term, Pencil) or term in (MEAN, BLOCKS):
        return term
    return effect_parse(term, plan.m, plan.field)


def _one_hot(index: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros((index.shape[0], width), dtype=np.int64)
    out[np.arange(index.shape[0]), index] = 1
    return out


def term_columns(plan: Plan, term: Term) -> np.ndarray:
    """0/1 indicator columns of one term, n rows."""
    term = _resolve(plan, term)
    if term == MEAN:
        return np.ones((plan.n, 1), dtype=np.int64)
    if term == BLOCKS:
        return _one_hot(plan.block_index, plan.b)
    return _one_hot(plan.levels(term), plan.s)


def _rational(arr: np.ndarray) -> RationalMatrix:
    return RationalMatrix.from_rows(arr.tolist(), ncols=arr.shape[1])


def _stack(plan: Plan, terms: Sequence[Term]) -> RationalMatrix:
    if not terms:
        return RationalMatrix.zeros(plan.n, 0)
    return _rational(np.hstack([term_columns(plan, t) for t in terms]))


@dataclass(frozen=True)
class ModelMatrix:
    """Columns: mean, then block indicators (optional), then s columns per pencil."""

    plan: Plan
    model: EffectModel
    with_blocks: bool
    array: np.ndarray
    groups: Dict[str, Tuple[int, ...]]

    @property
    def matrix(self) -> RationalMatrix:
        return _rational(self.array)

    def group(self, name: str) -> np.ndarray:
        return self.array[:, list(self.groups[name])]


def design_matrix(plan: Plan, model: EffectModel, with_blocks: bool = True) -> ModelMatrix:
    terms: List[Tuple[str, np.ndarray]] = [(MEAN, term_columns(plan, MEAN))]
    if with_blocks:
        terms.append((BLOCKS, term_columns(plan, BLOCKS)))
    terms.extend((p.name, term_columns(plan, p)) for p in model)
    groups = {}
    start = 0
    for name, cols in terms:
        groups[name] = tuple(range(start, start + cols.shape[1]))
        start += cols.shape[1]
    return ModelMatrix(plan, model, with_blocks, np.hstack([c for _, c in terms]), groups)


def _response(y: Sequence[Number]) -> RationalMatrix:
    return RationalMatrix.column(y)


def adjusted_projector(plan: Plan, S: Sequence[Term], T: Sequence[Term]) -> RationalMatrix:
    """P_Z with Z = (I - P_T) X_S; SS_{S;T} = y' P_Z y."""
    S = [_resolve(plan, t) for t in S]
    T = [_resolve(plan, t) for t in T]
    if set(S) & set(T):
        raise ValueError("Adjusted and adjusting term sets must be disjoint")
    return projector(residual(_stack(plan, S), _stack(plan, T)))


def adjusted_ss(y: Sequence[Number], plan: Plan, S: Sequence[Term], T: Sequence[Term]) -> Fraction:
    """Sum of squares for S adjusted for T."""
    return adjusted_projector(plan, S, T).quadratic_form(_response(y))


def sequential_ss(y: Sequence[Number], plan: Plan, model: EffectModel, i: Pencil) -> Fraction:
    """SS of pencil i adjusted for the model terms after it, the blocks and the mean."""
    later = list(model.pencils[model.index(i) + 1:])
    return adjusted_ss(y, plan, [i], later + [BLOCKS, MEAN])


def unadjusted_ss(y: Sequence[Number], plan: Plan, i: Term) -> Fraction:
    """T_i' R_i^- T_i - G^2/n from level totals."""
    values = [Fraction(v) for v in y]
    levels = plan.levels(_resolve(plan, i))
    totals = [Fraction(0)] * plan.s
    counts = [0] * plan.s
    for level, value in zip(levels.tolist(), values):
        totals[level] += value
        counts[level] += 1
    grand = sum(values, Fraction(0))
    between = sum((t * t / c for t, c in zip(totals, counts) if c), Fraction(0))
    return between - grand * grand / plan.n


def check_thm_cond_orth(plan: Plan, model: EffectModel, i: Pencil) -> CondOrthResult:
    """Compare the adjusted-SS equalities for pencil i with the incidence conditions.

    ss_equal_a: SS_{i;all} == SS_{i;mean}, against PFC of i with every other
    model effect and with the block factor. ss_equal_b: SS_{i;all} ==
    SS_{i;blocks}, against k N^{ij} = L^i (L^j)' for every other effect j.
    """
    others = [p for p in model if p != i]
    full = adjusted_projector(plan, [i], others + [BLOCKS, MEAN])
    ss_equal_a = full == adjusted_projector(plan, [i], [MEAN])
    ss_equal_b = full == adjusted_projector(plan, [i], [BLOCKS])

    r_i = replication_vector(plan, i)
    L_i = effect_block_matrix(plan, i)
    block_sizes = np.full(plan.b, plan.k, dtype=np.int64)
    pfc_all = pfc_holds(L_i, r_i, block_sizes, plan.n)
    otb_all = True
    for j in others:
        N = incidence_matrix(plan, i, j)
        pfc_all = pfc_all and pfc_holds(N, r_i, replication_vector(plan, j), plan.n)
        otb_all = otb_all and otb_holds(N, L_i, effect_block_matrix(plan, j), plan.k)
    return CondOrthResult(i.name, ss_equal_a, pfc_all, ss_equal_b, otb_all)


def _contrast_basis(s: int) -> RationalMatrix:
    """s x (s-1): columns e_0 - e_t for t = 1..s-1."""
    rows = [[0] * (s - 1) for _ in range(s)]
    for t in range(1, s):
        rows[0][t - 1] = 1
        rows[t][t - 1] = -1
    return RationalMatrix.from_rows(rows, ncols=s - 1)


def treatment_df(plan: Plan) -> int:
    """n minus the rank of mean and block columns."""
    return plan.n - plan.b


def model_df(plan: Plan, model: EffectModel) -> int:
    """Joint df of the model pencils beyond mean and blocks."""
    base = _stack(plan, [MEAN, BLOCKS])
    full = base.hstack(_stack(plan, list(model)))
    return full.rank() - base.rank()


def _verdict(df: int, s: int) -> EstimabilityVerdict:
    if df == s - 1:
        return EstimabilityVerdict.ESTIMABLE
    if df == 0:
        return EstimabilityVerdict.NOT_ESTIMABLE
    return EstimabilityVerdict.PARTIALLY_ESTIMABLE


def estimable_pencils(plan: Plan, model: EffectModel) -> EstimabilityReport:
    """Estimable level-contrast df of every pencil under mean + blocks + the whole model.

    A contrast c is estimable iff K c = 0 for a basis K of the null space of
    the model matrix; df = (s - 1) - rank(K restricted to the pencil's
    columns times a contrast basis).
    """
    mm = design_matrix(plan, model, with_blocks=True)
    kernel = mm.matrix.nullspace()
    contrasts = _contrast_basis(plan.s)
    entries = []
    for p in model:
        lost = (kernel.columns(mm.groups[p.name]) @ contrasts).rank() if kernel.nrows else 0
        df = (plan.s - 1) - lost
        entries.append(EstimabilityEntry(p.name, _verdict(df, plan.s), df))
    report = EstimabilityReport(plan.s, entries, treatment_df(plan))
    logger.debug("Estimability over %d pencils: %s", len(entries), report.totals_line())
    return report


def max_estimable_subset(plan: Plan, model: EffectModel) -> SelectionResult:
    """Greedy pass in model order keeping pencils that add a full s-1 df."""
    current = _stack(plan, [MEAN, BLOCKS])
    rank = current.rank()
    selected, skipped = [], []
    for p in model:
        candidate = current.hstack(_rational(term_columns(plan, p)))
        new_rank = candidate.rank()
        if new_rank - rank == plan.s - 1:
            selected.append(p.name)
            current, rank = candidate, new_rank
        else:
            skipped.append(p.name)
    return SelectionResult(selected, skipped, (plan.s - 1) * len(selected), treatment_df(plan))


def format_estimability(report: EstimabilityReport) -> str:
    lines = ['# estimability', '# effect\tverdict\tdf']
    for e in report.entries:
        lines.append(f"{e.effect}\t{e.verdict.value}\t{e.df}")
    lines.append(report.totals_line())
    return '\n'.join(lines) + '\n'
