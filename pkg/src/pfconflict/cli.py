"""Command-line front end.

    pfconflict validate --system table.csv
    pfconflict analyze --system table.csv --regime closeness --alpha 0.75 --beta 0.3
    pfconflict analyze --system table.csv --loss loss.json --rule score --out markdown
    pfconflict analyze --system table.csv --panel panel.json --rule closeness
    pfconflict reproduce

Exit codes: 0 success, 2 invalid input, 3 invalid configuration,
4 reference check failure.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass

from . import reference
from .alliance import Regime, Thresholds, partition
from .errors import (
    ConstraintError,
    DomainError,
    LossOrderError,
    ParseError,
    ShapeError,
    ThresholdError,
    WeightError,
)
from .group import classify_group, group_matrices, load_panel
from .pfn import PFN, cmp_eps
from .render import OUTPUT_FORMATS, Section, fmt_number, partition_section, render
from .risk import (
    Rule,
    classify,
    closeness_rows,
    expected_loss_matrix,
    load_loss,
    score_rows,
    to_partition,
    validate_loss,
)
from .system import PFIS, aggregate_all, load_system_file

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_CHECK = 4

INPUT_ERRORS = (ParseError, ConstraintError, DomainError, WeightError, ShapeError, OSError, UnicodeDecodeError)


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    system_path: str
    format: str | None = None
    regime: str | None = None
    thresholds: Thresholds | None = None
    loss_path: str | None = None
    panel_path: str | None = None
    rule: str = "pfn"
    output_format: str = "csv"
    precision: int = 4

    def driver(self) -> str:
        drivers = [
            name
            for name, present in (
                ("thresholds", self.thresholds is not None),
                ("loss", self.loss_path is not None),
                ("panel", self.panel_path is not None),
            )
            if present
        ]
        if len(drivers) != 1:
            raise CLIError(
                "exactly one of thresholds (--alpha/--beta or --gamma-upper/--gamma-lower), "
                f"--loss or --panel must be given; got {drivers or 'none'}",
                EXIT_CONFIG,
            )
        return drivers[0]


def _parse_gamma(text: str | None, flag: str) -> PFN | None:
    if text is None:
        return None
    try:
        mu, nu = (float(x) for x in text.split(","))
        return PFN(mu, nu)
    except (ValueError, DomainError, ConstraintError) as exc:
        raise CLIError(f"{flag}: expected 'mu,nu' forming a valid PFN, got {text!r} ({exc})", EXIT_CONFIG) from None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    upper = _parse_gamma(args.gamma_upper, "--gamma-upper")
    lower = _parse_gamma(args.gamma_lower, "--gamma-lower")
    regime = args.regime
    thresholds = None
    if upper is not None or lower is not None:
        if regime not in (None, "pfn"):
            raise CLIError("--gamma-upper/--gamma-lower only apply to --regime pfn", EXIT_CONFIG)
        regime = "pfn"
        thresholds = Thresholds(pfn_upper=upper, pfn_lower=lower)
    if args.alpha is not None or args.beta is not None:
        if thresholds is not None:
            raise CLIError("give either PFN thresholds or --alpha/--beta, not both", EXIT_CONFIG)
        if regime not in ("score", "closeness"):
            raise CLIError("--alpha/--beta need --regime score or --regime closeness", EXIT_CONFIG)
        if regime == "score":
            thresholds = Thresholds(score_alpha=args.alpha, score_beta=args.beta)
        else:
            thresholds = Thresholds(closeness_alpha=args.alpha, closeness_beta=args.beta)
    elif regime is not None and thresholds is None:
        raise CLIError(f"--regime {regime} needs thresholds", EXIT_CONFIG)
    if args.precision < 1:
        raise CLIError("--precision must be >= 1", EXIT_CONFIG)
    return RunConfig(
        system_path=args.system,
        format=args.format,
        regime=regime,
        thresholds=thresholds,
        loss_path=args.loss,
        panel_path=args.panel,
        rule=args.rule,
        output_format=args.out,
        precision=args.precision,
    )


def _load(config: RunConfig) -> PFIS:
    try:
        return load_system_file(config.system_path, config.format)
    except INPUT_ERRORS as exc:
        raise CLIError(f"{config.system_path}: {exc}", EXIT_INPUT) from None


def aggregate_section(s: PFIS) -> Section:
    rows = [[a.agent, a.value, a.score, a.closeness] for a in aggregate_all(s)]
    return Section("aggregates", "Aggregated attitudes", ["agent", "aggregate", "score", "closeness"], rows)


def _pfn_matrix(key: str, title: str, rows) -> Section:
    return Section(key, title, ["agent", "P", "B", "N"], [[r.agent, *r.losses] for r in rows])


def _real_matrix(key: str, title: str, rows) -> Section:
    return Section(key, title, ["agent", "P", "B", "N"], [list(r) for r in rows])


def analyze_sections(config: RunConfig) -> list[Section]:
    driver = config.driver()
    s = _load(config)
    sections = [aggregate_section(s)]
    if driver == "thresholds":
        try:
            part = partition(s, config.thresholds, Regime(config.regime))
        except ThresholdError as exc:
            raise CLIError(str(exc), EXIT_CONFIG) from None
        sections.append(partition_section("partition", f"Alliances ({config.regime} thresholds)", part))
        return sections

    rule = Rule(config.rule)
    if driver == "loss":
        try:
            loss = load_loss(config.loss_path)
        except INPUT_ERRORS as exc:
            raise CLIError(f"{config.loss_path}: {exc}", EXIT_INPUT) from None
        try:
            validate_loss(loss)
        except LossOrderError as exc:
            raise CLIError(f"{config.loss_path}: {exc}", EXIT_CONFIG) from None
        rows = expected_loss_matrix(s, loss)
        sections.append(_pfn_matrix("expected_loss", "Expected loss matrix", rows))
        if rule is Rule.SCORE:
            sections.append(_real_matrix("score_matrix", "Score matrix", score_rows(rows)))
        elif rule is Rule.CLOSENESS:
            sections.append(_real_matrix("closeness_matrix", "Closeness matrix", closeness_rows(rows)))
        part = to_partition([classify(r, rule) for r in rows], rule)
    else:
        try:
            panel = load_panel(config.panel_path)
        except INPUT_ERRORS as exc:
            raise CLIError(f"{config.panel_path}: {exc}", EXIT_INPUT) from None
        except LossOrderError as exc:
            raise CLIError(f"{config.panel_path}: {exc}", EXIT_CONFIG) from None
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            panel.check_rule(rule)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        gm = group_matrices(s, panel)
        sections.append(_pfn_matrix("group_expected_loss", "Group expected loss matrix", gm.pfn))
        if rule is Rule.SCORE:
            sections.append(_real_matrix("group_score_matrix", "Group score matrix", gm.score))
        elif rule is Rule.CLOSENESS:
            sections.append(_real_matrix("group_closeness_matrix", "Group closeness matrix", gm.closeness))
        part = to_partition([classify_group(r, rule) for r in gm.pfn], rule)
    sections.append(partition_section("partition", f"Alliances ({rule.value} rule)", part))
    return sections


def cmd_validate(args: argparse.Namespace, out=sys.stdout) -> int:
    try:
        s = load_system_file(args.system, args.format)
    except INPUT_ERRORS as exc:
        print(f"invalid: {args.system}: {exc}", file=out)
        return EXIT_INPUT
    n, m = s.shape
    print(f"{n} agents, {m} issues, valid", file=out)
    print("weights: " + ", ".join(fmt_number(k, args.precision) for k in s.weights), file=out)
    if s.weights_defaulted:
        print("uniform weights assumed", file=out)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, out=sys.stdout) -> int:
    config = config_from_args(args)
    sections = analyze_sections(config)
    out.write(render(sections, config.output_format, config.precision))
    return EXIT_OK


def _fmt_value(v: object, precision: int) -> str:
    if isinstance(v, tuple) and v and isinstance(v[0], float):
        inner = ",".join(fmt_number(x, precision) for x in v)
        return f"({inner})" if len(v) > 1 else inner
    if isinstance(v, tuple):
        return "/".join("{" + ",".join(g) + "}" for g in v)
    return str(v)


def cmd_reproduce(args: argparse.Namespace, out=sys.stdout) -> int:
    try:
        s = load_system_file(args.system, args.format) if args.system else None
        loss = load_loss(args.loss) if args.loss else None
        panel = load_panel(args.panel) if args.panel else None
    except INPUT_ERRORS as exc:
        print(f"invalid input: {exc}", file=out)
        return EXIT_INPUT
    except LossOrderError as exc:
        print(f"invalid configuration: {exc}", file=out)
        return EXIT_CONFIG
    start = time.perf_counter()
    checks = reference.run_checks(s, loss, panel)
    elapsed = time.perf_counter() - start
    p = args.precision
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status} {c.group} {c.name} expected={_fmt_value(c.expected, p)} actual={_fmt_value(c.actual, p)}"
        if c.tolerance is not None:
            line += f" err={c.error:.2e} tol={c.tolerance:.0e}"
        print(line, file=out)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed in {elapsed:.3f}s", file=out)
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfconflict", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, system_required: bool = True) -> None:
        p.add_argument("--system", required=system_required, help="information system file")
        p.add_argument("--format", choices=("csv", "json"), help="system file format (default: from extension)")
        p.add_argument("--precision", type=int, default=4, help="decimals in rendered numbers")

    v = sub.add_parser("validate", help="check a system file")
    common(v)
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="aggregate, build matrices and partition agents")
    common(a)
    a.add_argument("--regime", choices=("pfn", "score", "closeness"))
    a.add_argument("--alpha", type=float)
    a.add_argument("--beta", type=float)
    a.add_argument("--gamma-upper", metavar="MU,NU")
    a.add_argument("--gamma-lower", metavar="MU,NU")
    a.add_argument("--loss", help="loss function JSON")
    a.add_argument("--panel", help="expert panel JSON")
    a.add_argument("--rule", choices=("pfn", "score", "closeness"), default="pfn")
    a.add_argument("--out", choices=OUTPUT_FORMATS, default="csv")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reproduce", help="recompute the bundled worked example and check it")
    common(r, system_required=False)
    r.add_argument("--loss", help="override the bundled loss function")
    r.add_argument("--panel", help="override the bundled panel")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cmp_eps()
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args, out)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
