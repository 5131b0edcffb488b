"""Command-line interface.

Subcommands: generate, analyze, validate, spectrum, count, sample.
Exit codes: 0 ok, 1 rule diagnostics (invalid rule, overlap), 2 usage
errors (unknown rule or brick, malformed flags).  Error paths never write
to --out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .builtins import BUILTIN_SOURCES, builtin
from .generate import format_pattern, generate_pattern
from .joints import check_prop2, report_with_crossings, vertical_joints
from .rules import (RuleError, RuleSyntaxError, RuleValidationError,
                    parse_rule, validate_rule)
from .spectral import brick_frequencies, count_bricks, count_realizations, matrix, \
    pf_eigenvalue
from .stats import sample_vmax
from .svg import to_svg


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load_rule(ref: str):
    """Rule by builtin name or DSL file path."""
    if ref in BUILTIN_SOURCES:
        return builtin(ref)
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return parse_rule(fh.read())
    raise CliError(2, f"unknown rule '{ref}' (not a builtin, not a file)")


def _bind_p(rule, p_arg):
    if rule.is_parametric:
        if p_arg is None:
            raise CliError(2, f"rule '{rule.name}' is parametric; -p is required")
        try:
            p = Fraction(p_arg)
        except (ValueError, ZeroDivisionError):
            raise CliError(2, f"bad -p value '{p_arg}' (want num/den)") from None
        if not 0 <= p <= 1:
            raise CliError(2, f"-p {p} outside [0, 1]")
        return rule.bind(p)
    if p_arg is not None:
        raise CliError(2, f"rule '{rule.name}' has no parameter; drop -p")
    return rule


def _check_seed(rule, seed_type):
    if seed_type not in rule.type_ids:
        raise CliError(2, f"unknown seed brick '{seed_type}' in rule"
                          f" '{rule.name}' (have: {', '.join(rule.type_ids)})")


def _prepared(args):
    rule = _bind_p(_load_rule(args.rule), args.p)
    _check_seed(rule, args.seed_brick)
    if rule.is_random and args.rng_seed is None:
        raise CliError(2, f"rule '{rule.name}' is random; --rng-seed is required")
    return rule


def cmd_generate(args) -> int:
    rule = _prepared(args)
    pattern = generate_pattern(rule, args.seed_brick, args.n, args.rng_seed)
    if args.out.endswith(".svg"):
        content = to_svg(pattern, rule=rule)
    elif args.out.endswith(".txt"):
        content = format_pattern(pattern)
    else:
        raise CliError(2, f"--out must end in .svg or .txt, got '{args.out}'")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(content)
    print(f"wrote {args.out} ({len(pattern.bricks)} bricks)")
    return 0


def cmd_analyze(args) -> int:
    rule = _prepared(args)
    pattern = generate_pattern(rule, args.seed_brick, args.n, args.rng_seed)
    report = report_with_crossings(vertical_joints(pattern), rule)
    verdict = None
    if not rule.is_random:
        verdict = check_prop2(rule, args.seed_brick, args.n)
    if args.json:
        doc = report.to_json()
        if verdict is not None:
            doc["prop2"] = verdict.to_json()
        print(json.dumps(doc, indent=2))
        return 0
    print(f"rule {rule.name}, seed {args.seed_brick}, n={args.n}:"
          f" {len(pattern.bricks)} bricks")
    print(f"v_max: {report.v_max}")
    print(f"joints: {len(report.joints)}")
    crossing = [tid for tid, c in (report.crossings or {}).items() if c]
    print("crossings: " + (", ".join(crossing) if crossing else "none"))
    if verdict is not None and verdict.bound is not None:
        if verdict.hypothesis_holds:
            status = "respected" if verdict.bound_respected else "VIOLATED"
            print(f"joint bound {verdict.bound}: measured {verdict.measured_max},"
                  f" {status}")
        else:
            print(f"joint bound {verdict.bound}: not applicable"
                  f" (an image has a crossing); measured {verdict.measured_max}")
    return 0


def cmd_validate(args) -> int:
    if args.rule in BUILTIN_SOURCES:
        source = BUILTIN_SOURCES[args.rule]
    elif os.path.exists(args.rule):
        with open(args.rule, encoding="utf-8") as fh:
            source = fh.read()
    else:
        raise CliError(2, f"unknown rule '{args.rule}' (not a builtin, not a file)")
    try:
        rule = parse_rule(source, validate=False)
    except RuleSyntaxError as e:
        print(f"error: {e}")
        return 1
    diagnostics = validate_rule(rule)
    for d in diagnostics:
        print(d)
    if diagnostics:
        return 1
    print(f"ok: rule '{rule.name}' ({rule.engine}, {len(rule.types)} types)")
    return 0


def cmd_spectrum(args) -> int:
    rule = _bind_p(_load_rule(args.rule), args.p)
    M = matrix(rule)
    freqs = brick_frequencies(M)
    doc = {
        "pf_eigenvalue": pf_eigenvalue(M),
        "expected": float(rule.expansion),
        "frequencies": {tid: f for tid, f in zip(M.type_order, freqs)},
        "matrix": [[str(e) for e in row] for row in M.entries],
    }
    print(json.dumps(doc, indent=2))
    return 0


def cmd_count(args) -> int:
    rule = _load_rule(args.rule)
    _check_seed(rule, args.seed_brick)
    bricks = count_bricks(rule, args.seed_brick, args.n)
    realizations = count_realizations(rule, args.seed_brick, args.n)
    if args.json:
        print(json.dumps({"bricks": str(bricks),
                          "realizations": str(realizations)}, indent=2))
    else:
        print(f"bricks: {bricks}")
        print(f"realizations: {realizations}")
    return 0


def cmd_sample(args) -> int:
    rule = _load_rule(args.rule)
    _check_seed(rule, args.seed_brick)
    if not rule.is_parametric:
        raise CliError(2, f"rule '{rule.name}' has no parameter p; sample needs one")
    if args.p is None:
        raise CliError(2, "sample requires -p")
    try:
        p = Fraction(args.p)
    except (ValueError, ZeroDivisionError):
        raise CliError(2, f"bad -p value '{args.p}' (want num/den)") from None
    if not 0 <= p <= 1:
        raise CliError(2, f"-p {p} outside [0, 1]")
    if args.trials < 1:
        raise CliError(2, f"--trials must be >= 1, got {args.trials}")
    stats = sample_vmax(rule, args.seed_brick, args.n, p,
                        trials=args.trials, base_seed=args.rng_seed)
    print(json.dumps(stats.to_json(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brickwall",
        description="Generate and analyze brick wall patterns from"
                    " two-dimensional substitutions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_rule(p):
        p.add_argument("--rule", required=True,
                       help="builtin rule name or path to a rule DSL file")

    def add_common(p, with_seed=True):
        add_rule(p)
        if with_seed:
            p.add_argument("--seed-brick", required=True, help="seed brick type id")
            p.add_argument("-n", type=int, required=True, help="iteration depth")
        p.add_argument("--rng-seed", type=int, default=None,
                       help="64-bit seed for random rules")
        p.add_argument("-p", default=None, metavar="NUM/DEN",
                       help="value for the rule parameter p")

    p = sub.add_parser("generate", help="generate a pattern into an SVG or text file")
    add_common(p)
    p.add_argument("--out", required=True, help="output file (.svg or .txt)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="joint report for a generated pattern")
    add_common(p)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("validate", help="check a rule file, print diagnostics")
    add_rule(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="substitution matrix spectrum report")
    add_rule(p)
    p.add_argument("-p", default=None, metavar="NUM/DEN",
                   help="value for the rule parameter p")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("count", help="exact brick and realization counts")
    add_rule(p)
    p.add_argument("--seed-brick", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="Monte-Carlo v_max statistics for a"
                                      " parametric random rule")
    add_rule(p)
    p.add_argument("--seed-brick", required=True)
    p.add_argument("-n", type=int, default=4)
    p.add_argument("-p", required=True, metavar="NUM/DEN")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--rng-seed", type=int, default=0, help="base seed for trials")
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (RuleSyntaxError, RuleValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except RuleError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
