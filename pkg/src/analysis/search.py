"""Exhaustive search for the expansion subspace that estimates the most effects."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from src.algebra.gfvec import Subspace, enumerate_subspaces, gaussian_binomial
from src.analysis.linmodel import estimable_pencils
from src.design.effects import EffectModel
from src.design.expansion import expand
from src.design.plan import Plan
from src.design.relations import alias_classes
from src.errors import DimensionMismatchError, TooLargeError
from src.models.data_models import SubspaceScore

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50


def score_subspace(plan: Plan, V: Subspace, model: EffectModel) -> SubspaceScore:
    """Estimability and block-relation counts of expand(plan, V) under `model`."""
    expanded = expand(plan, V)
    report = estimable_pencils(expanded, model)
    structure = alias_classes(expanded, model)
    return SubspaceScore(
        subspace=V.to_string(),
        order_key=V.sort_key(),
        n_blocks=expanded.b,
        n_estimable=report.estimable,
        n_partial=report.partial,
        n_confounded=len(structure.confounded),
        n_constant=len(structure.constant),
        class_sizes=sorted((len(c) for c in structure.classes), reverse=True),
    )


def _score_args(args) -> SubspaceScore:
    return score_subspace(*args)


def search_best(plan: Plan, t: int, model: EffectModel, limit: int = 10,
                workers: Optional[int] = None,
                max_candidates: Optional[int] = None) -> List[SubspaceScore]:
    """Score every t-dimensional subspace and return the best `limit` of them.

    Order: most estimable pencils, then fewest confounded with blocks, then
    canonical basis order.
    """
    if not 0 <= t <= plan.m:
        raise DimensionMismatchError(f"Need 0 <= t <= m={plan.m}, got t={t}")
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if workers is None or max_candidates is None:
        from src.config import get_config
        config = get_config()
        workers = config.search_workers if workers is None else workers
        max_candidates = config.max_search_candidates if max_candidates is None else max_candidates
    total = gaussian_binomial(plan.m, t, plan.s)
    if total > max_candidates:
        raise TooLargeError(f"{total} candidate subspaces exceed the limit of {max_candidates}")
    logger.info("Scoring %d subspaces of dimension %d with %d worker(s)", total, t, workers)

    candidates = enumerate_subspaces(plan.field, plan.m, t)
    scores: List[SubspaceScore] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tasks = ((plan, V, model) for V in candidates)
            for score in pool.map(_score_args, tasks, chunksize=8):
                scores.append(score)
    else:
        for count, V in enumerate(candidates, start=1):
            scores.append(score_subspace(plan, V, model))
            if count % PROGRESS_EVERY == 0:
                logger.debug("Scored %d/%d subspaces", count, total)

    scores.sort(key=SubspaceScore.rank_key)
    return scores[:limit]


def format_scores(scores: List[SubspaceScore]) -> str:
    lines = ['# rank\tsubspace\tblocks\testimable\tpartial\tconfounded']
    for rank, sc in enumerate(scores, start=1):
        lines.append(
            f"{rank}\t{sc.subspace}\t{sc.n_blocks}\t{sc.n_estimable}\t{sc.n_partial}\t{sc.n_confounded}"
        )
    return '\n'.join(lines) + '\n'
