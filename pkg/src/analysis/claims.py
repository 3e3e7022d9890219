"""Evaluate the published statements about the catalog plans.

Each claim pairs an expected value with a function computing the same
quantity from scratch. A mismatch is a FAIL unless the claim carries a
discrepancy note, in which case it is reported as DISCREPANCY-DOCUMENTED
with the computed value alongside.
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from src.algebra.gfvec import members, orthocomplement, rref, FieldVector
from src.analysis.linmodel import estimable_pencils, max_estimable_subset, treatment_df
from src.config import get_config
from src.design.catalog import (
    F3,
    catalog_entry,
    catalog_plan,
    catalog_subspace,
    derived_plan,
    union_plan,
)
from src.design.effects import EffectModel, Pencil, effect_parse, model_mains_and_2fi
from src.design.expansion import expand, predict_relation
from src.design.plan import Plan
from src.design.relations import (
    alias_classes,
    block_relation,
    class_graph,
    defining_words,
    otb_check,
    verify_partition,
)
from src.errors import DesignError
from src.models.data_models import ClaimReport, ClaimResult, ClaimStatus, EstimabilityVerdict

logger = logging.getLogger(__name__)

RESOLUTION_V_RUNS_3_4 = 81
RESOLUTION_V_RUNS_3_6 = 243

PRINTED_P_CLASSES = [
    ['A', 'B^2C^2', 'BD^2', 'CD'],
    ['B', 'A^2C^2', 'AD', 'CD^2'],
    ['C', 'AD^2', 'A^2B^2', 'BD'],
    ['D', 'AC^2', 'A^2B', 'B^2C'],
]
PRINTED_P3_CLASSES = [
    ['A', 'B^2C^2'],
    ['B', 'A^2C^2'],
    ['C', 'A^2B^2'],
    ['AC^2', 'A^2B', 'B^2C'],
]
PRINTED_P5_CLASSES = [
    ['A', 'B^2C^2', 'BD^2', 'CD', 'CE', 'BE^2'],
    ['B', 'A^2C^2', 'AD', 'AE', 'CD^2', 'CE^2'],
    ['C', 'AD^2', 'A^2B^2', 'AE^2', 'BD', 'BE'],
    ['D', 'E', 'D^2E^2', 'AC^2', 'A^2B', 'B^2C'],
]
PRINTED_P6_CLASSES = [
    ['A', 'A^2F^2', 'B^2C^2', 'BD^2', 'BE^2', 'CD', 'CE', 'F'],
    ['B', 'A^2C^2', 'AD', 'AE', 'CD^2', 'CE^2', 'C^2F^2', 'DF', 'EF'],
    ['C', 'A^2B^2', 'AD^2', 'AE^2', 'BD', 'BE', 'B^2F^2', 'D^2F', 'E^F'],
    ['D', 'E', 'A^2B', 'AC^2', 'B^2C', 'BF^2', 'C^2F', 'D^2E^2'],
]
PRINTED_P26_CLASSES = [
    ['A', 'C', 'AC', 'BE^2', 'B^2F^2', 'DE^2', 'D^2F^2', 'EF'],
    ['B', 'D', 'AE', 'A^2F^2', 'BD', 'CE', 'C^2F^2', 'E^2F'],
    ['F', 'A^2B^2', 'A^2D^2', 'AE^2', 'B^2C^2', 'BE', 'C^2D^2', 'CE^2', 'DE'],
    ['E', 'A^2B', 'A^2D', 'AF^2', 'BC^2', 'B^2F', 'C^2D', 'CF^2', 'D^2F'],
]

PRINTED_V3_PARTITION = [['A', 'AC'], ['B', 'BC'], ['C', 'B^2C'], ['AB', 'AC^2', 'A^2B']]
PRINTED_V4_PARTITION = [
    ['A', 'AC'], ['B', 'BD^2'], ['C'], ['D'], ['BC', 'CD^2'],
    ['AD', 'CD'], ['AB', 'AD^2'], ['AB^2', 'BC^2'], ['AC^2', 'BD'],
]
PRINTED_V5_PARTITION = [
    ['A', 'AC', 'CE^2'], ['B', 'BD^2'], ['C', 'E', 'AE^2'], ['D'], ['BC', 'BE^2', 'CD^2'],
    ['CD', 'AD'], ['AD^2', 'AB', 'DE'], ['BE', 'BC^2', 'AB^2'], ['CE', 'AE'], ['BD', 'AC^2'],
]
# Aliased groups inside a class are flattened into the class.
PRINTED_V6_PARTITION = [
    ['A', 'B', 'AD'], ['C', 'E'], ['D', 'AB^2', 'BD'], ['F', 'CE', 'CF', 'EF'],
    ['BD^2', 'CF^2'], ['CD^2', 'BE^2'], ['BE', 'BF^2', 'D^2E^2'],
    ['AD^2', 'EF^2', 'AB^2', 'CF^2'], ['AE^2', 'BC^2', 'AC^2', 'BF^2'],
    ['CD', 'AC', 'AE', 'DF', 'AF', 'BC'],
]
PRINTED_V26_PARTITION = [
    ['C', 'DE^2', 'BF', 'B', 'AE', 'CF'],
    ['A', 'AC', 'BE^2', 'D', 'BD', 'EF^2', 'EF', 'DF', 'AF', 'CE'],
    ['F', 'DE', 'BC', 'AD^2', 'BC^2', 'BF^2', 'CF^2'],
    ['E', 'AB^2', 'DF^2', 'AD', 'CE^2', 'CD^2', 'AF^2', 'AB', 'AE^2', 'BE', 'CD'],
]

PARTITION_NOTE = 'printed orthogonal classes are not all mutually OTB on the computed plan'
CLASSES_NOTE = 'printed alias classes differ from the computed ones'
ESTIMABILITY_NOTE = (
    'exact rank computation disagrees with the printed count; '
    'full-model and greedy joint-estimability counts are shown'
)
GREEDY_LABEL = 'greedy joint selection in model order (a lower bound)'
GREEDY_FOOTER = (
    '# greedy joint counts keep pencils in model order and bound the largest '
    'jointly estimable set from below'
)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    claimed: str
    compute: Callable[[], Tuple[str, str]]
    discrepancy_note: Optional[str] = None


@lru_cache(maxsize=None)
def _model(m: int) -> EffectModel:
    return model_mains_and_2fi(m, F3)


@lru_cache(maxsize=None)
def _expanded(name: str) -> Plan:
    return expand(catalog_plan(name), catalog_subspace(name))


@lru_cache(maxsize=None)
def _union() -> Plan:
    return union_plan()


def _pencil(name: str, m: int) -> Pencil:
    return effect_parse(name, m, F3)


def _canonical(name: str, m: int) -> Tuple[Tuple, str]:
    """Sort key and canonical name; unparseable names sort last, unchanged."""
    try:
        p = _pencil(name, m)
        return (0, p.sort_key()), p.name
    except DesignError:
        return (1, name), name


def format_classes(classes: Sequence[Sequence[str]], m: int) -> str:
    rendered = []
    for cls in classes:
        names = sorted({_canonical(n, m) for n in cls})
        rendered.append((names[0][0] if names else (2,), '{' + ','.join(n for _, n in names) + '}'))
    return ' '.join(text for _, text in sorted(rendered))


def _alias_classes_text(plan: Plan) -> Tuple[str, str]:
    structure = alias_classes(plan, _model(plan.m))
    return format_classes(structure.classes, plan.m), ''


def _blocks_text(plan: Plan) -> Tuple[str, str]:
    return f"{plan.b} blocks of {plan.k}", ''


def _partition_text(plan: Plan, printed: List[List[str]]) -> Tuple[str, str]:
    try:
        report = verify_partition(plan, printed)
    except DesignError as exc:
        return 'unparseable', str(exc)
    if report.passed:
        return 'inter-class orthogonal', ''
    shown = '; '.join(f"{a}~{b}:{flags}" for a, b, flags in report.violations[:5])
    return f"{len(report.violations)} violating pairs", shown


def _estimable_text(plan: Plan) -> Tuple[str, str]:
    report = estimable_pencils(plan, _model(plan.m))
    selection = max_estimable_subset(plan, _model(plan.m))
    detail = (f"{report.totals_line()}; {GREEDY_LABEL} {len(selection.selected)} pencils, "
              f"df {selection.df_used}/{selection.df_budget}")
    return f"{report.estimable} of {len(report.entries)} estimable", detail


def _joint_text(plan: Plan) -> Tuple[str, str]:
    report = estimable_pencils(plan, _model(plan.m))
    selection = max_estimable_subset(plan, _model(plan.m))
    detail = (f"{GREEDY_LABEL}; full model {report.totals_line()}; "
              f"skipped {','.join(selection.skipped)}")
    return f"{len(selection.selected)} of {len(report.entries)} estimable", detail


def _verdicts_text(plan: Plan, names: Sequence[str]) -> Tuple[str, str]:
    return ','.join(block_relation(plan, _pencil(n, plan.m)).value for n in names), ''


def _flat_text() -> Tuple[str, str]:
    plan = catalog_plan('P')
    words = rref([FieldVector(F3, (1, 1, 1, 0)), FieldVector(F3, (1, 0, 2, 2))])
    flat = set(members(orthocomplement(words)))
    runs = plan.runs
    if len(set(runs)) != len(runs) or not set(runs) <= flat:
        return 'not a subset of the flat', ''
    missing = sorted(flat - set(runs), key=lambda v: v.coords)
    return 'flat minus ' + ','.join(str(v) for v in missing), ''


def _defining_text(plan: Plan) -> Tuple[str, str]:
    return ' '.join(p.name for p in defining_words(plan)), ''


def _graph_text() -> Tuple[str, str]:
    plan = catalog_plan('P')
    classes = [[_pencil(n, 4) for n in cls] for cls in PRINTED_P_CLASSES]
    edges = sorted(class_graph(plan, classes))
    return ' '.join(f"A{i + 1}-A{j + 1}" for i, j in edges), ''


def _prediction_text() -> Tuple[str, str]:
    plan = catalog_plan('P')
    c, d = _pencil('C', 4), _pencil('D', 4)
    predicted = predict_relation(plan, catalog_subspace('V4'), c, d)
    confirmed = otb_check(_expanded('P'), c, d)
    return predicted.value + (' (confirmed)' if confirmed else ' (refuted)'), ''


def _mains_text(plan: Plan) -> Tuple[str, str]:
    report = estimable_pencils(plan, _model(plan.m))
    mains = report.entries[:plan.m]
    ok = sum(e.verdict == EstimabilityVerdict.ESTIMABLE for e in mains)
    return f"{ok} of {plan.m} main effects estimable", ''


def _lost_text(plan: Plan) -> Tuple[str, str]:
    report = estimable_pencils(plan, _model(plan.m))
    lost = [e.effect for e in report.entries if e.verdict != EstimabilityVerdict.ESTIMABLE]
    return ','.join(lost) or 'none', ''


def _runs_text(plan: Plan, baseline: int) -> Tuple[str, str]:
    relation = '<' if plan.n < baseline else '>='
    return f"{plan.n} {relation} {baseline}", ''


def _same_plan(name: str) -> Tuple[str, str]:
    return ('identical' if derived_plan(name) == catalog_plan(name) else 'different'), ''


def _no_aliasing_text(plan: Plan) -> Tuple[str, str]:
    structure = alias_classes(plan, _model(plan.m))
    merged = [c for c in structure.classes if len(c) > 1]
    if not merged:
        return 'no aliased pairs', ''
    return f"{len(merged)} aliased groups", format_classes(merged, plan.m)


def _expected_classes(printed: List[List[str]], m: int) -> str:
    return format_classes(printed, m)


def build_claims() -> List[Claim]:
    """Every catalog claim, in report order."""
    P = catalog_plan
    return [
        Claim('P.shape', '3^4 starting plan', 's=3 m=4 b=2 k=4',
              lambda: (f"s={P('P').s} m={P('P').m} b={P('P').b} k={P('P').k}", '')),
        Claim('P.flat', '3^4 starting plan: runs', 'flat minus (1,0,2,2)', _flat_text),
        Claim('P.defining_words', '3^4 starting plan: defining relation',
              'ABC AB^2D AC^2D^2 BC^2D', lambda: _defining_text(P('P'))),
        Claim('P.alias_classes', '3^4 starting plan: alias classes',
              _expected_classes(PRINTED_P_CLASSES, 4), lambda: _alias_classes_text(P('P'))),
        Claim('P.graph', '3^4 starting plan: orthogonality graph',
              'A1-A3 A1-A4 A2-A3 A2-A4', _graph_text),

        Claim('P3.alias_classes', '3^3 construction: alias classes',
              _expected_classes(PRINTED_P3_CLASSES, 3), lambda: _alias_classes_text(P('P3'))),
        Claim('V3.blocks', '3^3 construction: six blocks of size four', '6 blocks of 4',
              lambda: _blocks_text(_expanded('P3'))),
        Claim('V3.partition', '3^3 construction: orthogonal classes', 'inter-class orthogonal',
              lambda: _partition_text(_expanded('P3'), PRINTED_V3_PARTITION)),
        Claim('V3.no_aliasing', '3^3 construction: no effect aliased', 'no aliased pairs',
              lambda: _no_aliasing_text(_expanded('P3'))),
        Claim('V3.estimable', '3^3 construction: all effects estimable', '9 of 9 estimable',
              lambda: _estimable_text(_expanded('P3')),
              ESTIMABILITY_NOTE + '; the 24 runs miss the line {(x,0,2)}, capping the joint df at 16'),

        Claim('V4.blocks', '3^4 construction: eighteen blocks of size four', '18 blocks of 4',
              lambda: _blocks_text(_expanded('P'))),
        Claim('V4.prediction', '3^4 construction: C and D in different classes', 'OTB (confirmed)',
              _prediction_text),
        Claim('V4.partition', '3^4 construction: orthogonal classes', 'inter-class orthogonal',
              lambda: _partition_text(_expanded('P'), PRINTED_V4_PARTITION)),
        Claim('V4.estimable', '3^4 construction: all effects estimable', '16 of 16 estimable',
              lambda: _estimable_text(_expanded('P')), ESTIMABILITY_NOTE),
        Claim('V4.runs', '3^4 construction: resolution V comparison',
              f"72 < {RESOLUTION_V_RUNS_3_4}",
              lambda: _runs_text(_expanded('P'), RESOLUTION_V_RUNS_3_4)),

        Claim('P5.derived', '3^5 construction: P with factor E added', 'identical',
              lambda: _same_plan('P5')),
        Claim('P5.constant', '3^5 construction: defining relation', 'ConstantOnPlan',
              lambda: _verdicts_text(P('P5'), ['DE^2'])),
        Claim('P5.alias_classes', '3^5 construction: alias classes',
              _expected_classes(PRINTED_P5_CLASSES, 5), lambda: _alias_classes_text(P('P5'))),
        Claim('V5.blocks', '3^5 construction: eighteen blocks', '18 blocks of 4',
              lambda: _blocks_text(_expanded('P5'))),
        Claim('V5.confounded', '3^5 construction: DE^2 confounded with blocks',
              'ConfoundedWithBlock', lambda: _verdicts_text(_expanded('P5'), ['DE^2'])),
        Claim('V5.partition', '3^5 construction: orthogonal classes', 'inter-class orthogonal',
              lambda: _partition_text(_expanded('P5'), PRINTED_V5_PARTITION)),
        Claim('V5.estimable', '3^5 construction: all but DE^2 estimable', '24 of 25 estimable',
              lambda: _estimable_text(_expanded('P5')), ESTIMABILITY_NOTE),
        Claim('V5.lost', '3^5 construction: only DE^2 lost', 'DE^2',
              lambda: _lost_text(_expanded('P5')), ESTIMABILITY_NOTE),
        Claim('V5.runs', '3^5 construction: resolution V comparison',
              f"72 < {RESOLUTION_V_RUNS_3_4}",
              lambda: _runs_text(_expanded('P5'), RESOLUTION_V_RUNS_3_4)),

        Claim('P6.derived', '3^6 construction: P with factors E and F added', 'identical',
              lambda: _same_plan('P6')),
        Claim('P6.constant', '3^6 construction: defining relation',
              'ConstantOnPlan,ConstantOnPlan', lambda: _verdicts_text(P('P6'), ['DE^2', 'AF^2'])),
        Claim('P6.alias_classes', '3^6 construction: alias classes',
              _expected_classes(PRINTED_P6_CLASSES, 6), lambda: _alias_classes_text(P('P6')),
              CLASSES_NOTE + ' (the printed list contains the malformed token E^F)'),
        Claim('V6.headline', '3^6 construction: headline run size', '3^5',
              lambda: (f"3^{P('P6').m}", ''),
              'the statement names a 3^5 experiment for the six-factor plan'),
        Claim('V6.blocks', '3^6 construction: eighteen blocks', '18 blocks of 4',
              lambda: _blocks_text(_expanded('P6'))),
        Claim('V6.confounded', '3^6 construction: DE^2 and AF^2 confounded with blocks',
              'ConfoundedWithBlock,ConfoundedWithBlock',
              lambda: _verdicts_text(_expanded('P6'), ['DE^2', 'AF^2'])),
        Claim('V6.partition', '3^6 construction: orthogonal classes', 'inter-class orthogonal',
              lambda: _partition_text(_expanded('P6'), PRINTED_V6_PARTITION),
              PARTITION_NOTE + ' (CF^2 is listed in two classes)'),
        Claim('V6.df_budget', '3^6 construction: treatment degrees of freedom', '54',
              lambda: (str(treatment_df(_expanded('P6'))), '')),
        Claim('V6.mains', '3^6 construction: all main effects estimable',
              '6 of 6 main effects estimable', lambda: _mains_text(_expanded('P6')),
              ESTIMABILITY_NOTE),
        Claim('V6.estimable', '3^6 construction: at most 27 effects estimable',
              '27 of 36 estimable', lambda: _joint_text(_expanded('P6')), ESTIMABILITY_NOTE),

        Claim('P26.constant', 'supplementary plan: AC^2 and BD^2 in the defining relation',
              'ConstantOnPlan,ConstantOnPlan',
              lambda: _verdicts_text(P('P26'), ['AC^2', 'BD^2'])),
        Claim('V26.confounded', 'supplementary plan: AC^2 and BD^2 confounded with blocks',
              'ConfoundedWithBlock,ConfoundedWithBlock',
              lambda: _verdicts_text(_expanded('P26'), ['AC^2', 'BD^2'])),
        Claim('P26.alias_classes', 'supplementary plan: alias classes',
              _expected_classes(PRINTED_P26_CLASSES, 6), lambda: _alias_classes_text(P('P26'))),
        Claim('V26.blocks', 'supplementary plan: six blocks of size four', '6 blocks of 4',
              lambda: _blocks_text(_expanded('P26'))),
        Claim('V26.partition', 'supplementary plan: orthogonal classes', 'inter-class orthogonal',
              lambda: _partition_text(_expanded('P26'), PRINTED_V26_PARTITION), PARTITION_NOTE),
        Claim('union.shape', 'two plans together: 96 runs', '24 blocks, 96 runs',
              lambda: (f"{_union().b} blocks, {_union().n} runs", '')),
        Claim('union.estimable', 'two plans together: all but one effect estimable',
              '35 of 36 estimable', lambda: _joint_text(_union()), ESTIMABILITY_NOTE),
        Claim('union.runs', 'two plans together: resolution V comparison',
              f"96 < {RESOLUTION_V_RUNS_3_6}",
              lambda: _runs_text(_union(), RESOLUTION_V_RUNS_3_6)),
    ]


CLAIM_PREFIXES = {
    'P': ('P.', 'V4.'),
    'P3': ('P3.', 'V3.'),
    'P5': ('P5.', 'V5.'),
    'P6': ('P6.', 'V6.', 'union.'),
    'P26': ('P26.', 'V26.', 'union.'),
}


def claims_for(name: str) -> List[Claim]:
    """Claims about one catalog plan, its expansion and any union it joins."""
    entry = catalog_entry(name)
    return [c for c in build_claims() if c.claim_id.startswith(CLAIM_PREFIXES[entry.name])]


def evaluate_claim(claim: Claim) -> ClaimResult:
    try:
        computed, detail = claim.compute()
    except DesignError as exc:
        computed, detail = 'error', str(exc)
    if computed == claim.claimed:
        return ClaimResult(claim.claim_id, claim.anchor, computed, claim.claimed, ClaimStatus.PASS, detail)
    if claim.discrepancy_note:
        note = claim.discrepancy_note + (f" [{detail}]" if detail else '')
        logger.warning("Claim %s differs from computation: %s vs %s",
                       claim.claim_id, claim.claimed, computed)
        return ClaimResult(claim.claim_id, claim.anchor, computed, claim.claimed,
                           ClaimStatus.DISCREPANCY, note)
    logger.error("Claim %s failed: expected %s, computed %s", claim.claim_id, claim.claimed, computed)
    return ClaimResult(claim.claim_id, claim.anchor, computed, claim.claimed, ClaimStatus.FAIL, detail)


def verify_claims(claims: Optional[List[Claim]] = None) -> ClaimReport:
    """Evaluate every claim in order."""
    claims = build_claims() if claims is None else claims
    timing = get_config().enable_timing_logging
    results = []
    for claim in claims:
        start = time.perf_counter()
        results.append(evaluate_claim(claim))
        if timing:
            logger.info("Claim %s took %.3f s", claim.claim_id, time.perf_counter() - start)
    report = ClaimReport(results)
    logger.info("Claims: %s", ', '.join(f"{s.value}={report.count(s)}" for s in ClaimStatus))
    return report


def format_claims(report: ClaimReport) -> str:
    lines = ['# claim\tanchor\tcomputed\tclaimed\tstatus\tnote']
    for r in report.results:
        lines.append(f"{r.claim_id}\t{r.anchor}\t{r.computed}\t{r.claimed}\t{r.status.value}\t{r.note}")
    if any(GREEDY_LABEL in r.note for r in report.results):
        lines.append(GREEDY_FOOTER)
    return '\n'.join(lines) + '\n'
