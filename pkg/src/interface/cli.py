"""Command-line front end: expand, check, report, search, verify-paper.

Reports go to stdout as TSV with '#'-prefixed headers (or JSON with --json);
logs go to stderr. Exit codes: 0 success, 1 a claim failed, 2 usage or
parse error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.algebra.gfvec import parse_subspace
from src.analysis.claims import format_claims, verify_claims
from src.analysis.linmodel import estimable_pencils, format_estimability
from src.analysis.search import format_scores, search_best
from src.config import ConfigurationError, configure_logging, get_config, use_env_file
from src.design.catalog import catalog_plan
from src.design.effects import effect_parse, model_from_flag
from src.design.expansion import expand
from src.design.plan import Plan, parse_plan, serialize_plan
from src.design.relations import (
    block_words,
    defining_words,
    format_relation_matrix,
    pair_relation,
    relation_matrix,
)
from src.errors import DesignError, EffectNameError, UnknownEffectNameError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2


def _load_plan(args: argparse.Namespace) -> Plan:
    if args.catalog:
        return catalog_plan(args.catalog)
    return parse_plan(Path(args.plan).read_text())


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text)
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def cmd_expand(args: argparse.Namespace) -> int:
    plan = _load_plan(args)
    V = parse_subspace(args.subspace, plan.field, plan.m)
    _emit(serialize_plan(expand(plan, V)), args.out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    plan = _load_plan(args)
    try:
        a, b = (effect_parse(name, plan.m, plan.field) for name in args.effects)
    except EffectNameError as exc:
        raise UnknownEffectNameError(str(exc)) from exc
    relation = pair_relation(plan, a, b)
    if args.json:
        _emit(json.dumps(relation.to_dict(), indent=2) + '\n')
    else:
        _emit(relation.flags_text() + '\n')
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    plan = _load_plan(args)
    model = model_from_flag(args.model or get_config().default_model, plan.m, plan.field)
    relations = relation_matrix(plan, model)
    estimability = estimable_pencils(plan, model)
    words = [p.name for p in defining_words(plan)]
    blocks = [p.name for p in block_words(plan)]
    if args.json:
        payload = {
            'plan': {'s': plan.s, 'm': plan.m, 'b': plan.b, 'k': plan.k},
            'relations': relations.to_dict(),
            'estimability': estimability.to_dict(),
            'defining_words': words,
            'block_words': blocks,
        }
        _emit(json.dumps(payload, indent=2) + '\n', args.out)
        return EXIT_OK
    sections = [
        f"# plan s={plan.s} m={plan.m} b={plan.b} k={plan.k}\n",
        format_relation_matrix(relations),
        format_estimability(estimability),
        '# defining words\n' + ''.join(f"{w}\n" for w in words),
        '# block words\n' + ''.join(f"{w}\n" for w in blocks),
    ]
    _emit(''.join(sections), args.out)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    plan = _load_plan(args)
    model = model_from_flag(args.model or get_config().default_model, plan.m, plan.field)
    scores = search_best(plan, args.t, model, args.limit)
    if args.json:
        _emit(json.dumps([s.to_dict() for s in scores], indent=2) + '\n', args.out)
    else:
        _emit(format_scores(scores), args.out)
    return EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    report = verify_claims()
    _emit(report.to_json() + '\n' if args.json else format_claims(report), args.out)
    return EXIT_CLAIM_FAILED if report.failures else EXIT_OK


def _add_plan_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--plan', help='plan file')
    source.add_argument('--catalog', help='built-in plan: P, P3, P5, P6 or P26')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='blockplan',
        description='Construct, expand and verify blocked fractional factorial plans.',
    )
    parser.add_argument('--config', help='.env file with settings')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('expand', help='expand a plan along a subspace')
    _add_plan_source(p)
    p.add_argument('--subspace', required=True, help='basis vectors, e.g. 0102;1010')
    p.add_argument('--out', help='output plan file (default: stdout)')
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser('check', help='relation between two effects')
    _add_plan_source(p)
    p.add_argument('effects', nargs=2, metavar='EFFECT')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser('report', help='relation matrix and estimability report')
    _add_plan_source(p)
    p.add_argument('--model', choices=['mains', 'mains+2fi'])
    p.add_argument('--out')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_report)

    p = sub.add_parser('search', help='rank expansion subspaces')
    _add_plan_source(p)
    p.add_argument('--t', type=int, required=True, help='subspace dimension')
    p.add_argument('--limit', type=int, default=10)
    p.add_argument('--model', choices=['mains', 'mains+2fi'])
    p.add_argument('--out')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser('verify-paper', help='check every catalog claim')
    p.add_argument('--out')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_verify_paper)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            use_env_file(args.config)
        configure_logging()
        return args.handler(args)
    except (DesignError, ConfigurationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
