"""Bundled worked example and its published results, plus a checker.

The bundled data are a six-agent, five-issue system, a single loss function
and a three-expert panel with equal weights.  ``run_checks`` recomputes
every published quantity and compares it at full precision against the
printed value with the tolerances below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .alliance import Thresholds, partition_closeness, partition_pfn, partition_score
from .group import LossPanel, classify_group, group_matrices
from .pfn import PFN
from .risk import (
    LossFunction,
    Rule,
    classify,
    closeness_rows,
    expected_loss_matrix,
    score_rows,
    to_partition,
)
from .system import PFIS, aggregate_all, load_system

AGENTS = ("x1", "x2", "x3", "x4", "x5", "x6")

AGGREGATES = {
    "x1": (0.90, 0.16),
    "x2": (0.38, 0.64),
    "x3": (0.20, 0.80),
    "x4": (0.30, 0.70),
    "x5": (0.36, 0.70),
    "x6": (0.48, 0.58),
}
AGGREGATE_SCORES = dict(zip(AGENTS, (0.7844, -0.2652, -0.6000, -0.4000, -0.3604, -0.1060)))
# Printed to four decimals; the x6 entry is inconsistent with its own aggregate
# P(0.48, 0.58), whose closeness is 0.46302.
AGGREGATE_CLOSENESS = dict(zip(AGENTS, (0.8368, 0.4083, 0.2727, 0.3592, 0.3695, 0.4584)))

PFN_THRESHOLDS = Thresholds(pfn_upper=PFN(0.7, 0.4), pfn_lower=PFN(0.25, 0.85))
SCORE_THRESHOLDS = Thresholds(score_alpha=0.5, score_beta=-0.5)
CLOSENESS_THRESHOLDS = Thresholds(closeness_alpha=0.75, closeness_beta=0.3)

EXPECTED_LOSS = {
    "x1": ((0.4937, 0.6380), (0.5859, 0.5151), (0.8675, 0.3521)),
    "x2": ((0.7920, 0.3522), (0.5450, 0.5570), (0.7103, 0.5360)),
    "x3": ((0.8378, 0.2919), (0.5308, 0.5709), (0.6187, 0.6122)),
    "x4": ((0.8101, 0.3291), (0.5399, 0.5620), (0.6808, 0.5625)),
    "x5": ((0.8065, 0.3338), (0.5410, 0.5609), (0.6873, 0.5568)),
    "x6": ((0.7694, 0.3800), (0.5505, 0.5514), (0.7393, 0.5080)),
}
SCORE_MATRIX = {
    "x1": (-0.1633, 0.0779, 0.6286),
    "x2": (0.5031, -0.0132, 0.2172),
    "x3": (0.6168, -0.0442, 0.0080),
    "x4": (0.5480, -0.0243, 0.1471),
    "x5": (0.5390, -0.0219, 0.1623),
    "x6": (0.4476, -0.0010, 0.2885),
}
CLOSENESS_MATRIX = {
    "x1": (0.4395, 0.5280, 0.7797),
    "x2": (0.7015, 0.4953, 0.5899),
    "x3": (0.7543, 0.4841, 0.5032),
    "x4": (0.7218, 0.4913, 0.5603),
    "x5": (0.7176, 0.4921, 0.5666),
    "x6": (0.6771, 0.4997, 0.6207),
}
GROUP_EXPECTED_LOSS = {
    "x1": ((0.4623, 0.6731), (0.5412, 0.5926), (0.7617, 0.2503)),
    "x2": ((0.7203, 0.3558), (0.5571, 0.5769), (0.6020, 0.4633)),
    "x3": ((0.7660, 0.2929), (0.5609, 0.5730), (0.5186, 0.5679)),
    "x4": ((0.7380, 0.3314), (0.5586, 0.5754), (0.5746, 0.4986)),
    "x5": ((0.7344, 0.3364), (0.5583, 0.5757), (0.5806, 0.4909)),
    "x6": ((0.6987, 0.3852), (0.5554, 0.5786), (0.6295, 0.4273)),
}
GROUP_SCORE_MATRIX = {
    "x1": (-0.2393, -0.0583, 0.5176),
    "x2": (0.3922, -0.0224, 0.1478),
    "x3": (0.5009, -0.0137, -0.0536),
    "x4": (0.4349, -0.0191, 0.0816),
    "x5": (0.4263, -0.0198, 0.0961),
    "x6": (0.3398, -0.0262, 0.2137),
}
GROUP_CLOSENESS_MATRIX = {
    "x1": (0.4103, 0.4785, 0.6907),
    "x2": (0.6448, 0.4918, 0.5519),
    "x3": (0.6887, 0.4950, 0.4810),
    "x4": (0.6616, 0.4930, 0.5287),
    "x5": (0.6582, 0.4927, 0.5338),
    "x6": (0.6246, 0.4903, 0.5752),
}

# (positive, central, negative, unclassified)
PARTITIONS = {
    "alliance-pfn": (("x1",), ("x2", "x4", "x5", "x6"), (), ("x3",)),
    "alliance-score": (("x1",), ("x2", "x4", "x5", "x6"), ("x3",), ()),
    "alliance-closeness": (("x1",), ("x2", "x4", "x5", "x6"), ("x3",), ()),
    "risk-pfn": (("x1",), ("x2", "x5", "x6"), (), ("x3", "x4")),
    "risk-score": (("x1",), ("x2", "x3", "x4", "x5", "x6"), (), ()),
    "risk-closeness": (("x1",), ("x2", "x3", "x4", "x5", "x6"), (), ()),
    "group-pfn": (("x1",), ("x2", "x4", "x5", "x6"), (), ("x3",)),
    "group-score": (("x1",), ("x2", "x4", "x5", "x6"), ("x3",), ()),
    "group-closeness": (("x1",), ("x2", "x4", "x5", "x6"), ("x3",), ()),
}

TOL_AGGREGATE = 1e-12
TOL_SCORE = 1e-9
TOL_CLOSENESS = 5e-4
TOL_TABLE = 2e-3

ACTION_NAMES = ("P", "B", "N")


def _text(name: str) -> str:
    return resources.files("pfconflict.data").joinpath(name).read_text(encoding="utf-8")


def reference_system() -> PFIS:
    return load_system(_text("reference_system.csv"), "csv")


def reference_loss() -> LossFunction:
    return LossFunction.from_dict(json.loads(_text("reference_loss.json")))


def reference_panel() -> LossPanel:
    return LossPanel.from_dict(json.loads(_text("reference_panel.json")))


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    expected: object
    actual: object
    error: float | None
    tolerance: float | None
    passed: bool


def _numeric(group: str, name: str, expected: tuple, actual: tuple, tol: float) -> Check:
    err = max(abs(a - e) for a, e in zip(actual, expected))
    return Check(group, name, expected, actual, err, tol, err <= tol)


def _partition(group: str, got, expected) -> Check:
    actual = (got.positive, got.central, got.negative, got.unclassified)
    return Check(group, "partition", expected, actual, None, None, actual == expected)


def run_checks(
    system: PFIS | None = None,
    loss: LossFunction | None = None,
    panel: LossPanel | None = None,
) -> list[Check]:
    """Recompute every published quantity and compare with the printed values."""
    s = system if system is not None else reference_system()
    l = loss if loss is not None else reference_loss()
    pnl = panel if panel is not None else reference_panel()
    checks: list[Check] = []

    aggs = {a.agent: a for a in aggregate_all(s)}
    for agent in AGENTS:
        agg = aggs[agent]
        checks.append(
            _numeric("aggregate", f"R({agent})", AGGREGATES[agent], (agg.value.mu, agg.value.nu), TOL_AGGREGATE)
        )
    for agent in AGENTS:
        checks.append(_numeric("aggregate-score", f"S(R({agent}))", (AGGREGATE_SCORES[agent],), (aggs[agent].score,), TOL_SCORE))
    for agent in AGENTS:
        checks.append(
            _numeric(
                "aggregate-closeness", f"C(R({agent}))", (AGGREGATE_CLOSENESS[agent],), (aggs[agent].closeness,), TOL_CLOSENESS
            )
        )
    checks.append(_partition("alliance-pfn", partition_pfn(s, PFN_THRESHOLDS), PARTITIONS["alliance-pfn"]))
    checks.append(_partition("alliance-score", partition_score(s, SCORE_THRESHOLDS), PARTITIONS["alliance-score"]))
    checks.append(
        _partition("alliance-closeness", partition_closeness(s, CLOSENESS_THRESHOLDS), PARTITIONS["alliance-closeness"])
    )

    rows = expected_loss_matrix(s, l)
    checks += _pfn_table("expected-loss", rows, EXPECTED_LOSS)
    checks += _real_table("score-matrix", score_rows(rows), SCORE_MATRIX)
    checks += _real_table("closeness-matrix", closeness_rows(rows), CLOSENESS_MATRIX)
    for rule in Rule:
        got = to_partition([classify(r, rule) for r in rows], rule)
        checks.append(_partition(f"risk-{rule.value}", got, PARTITIONS[f"risk-{rule.value}"]))

    gm = group_matrices(s, pnl)
    checks += _pfn_table("group-expected-loss", gm.pfn, GROUP_EXPECTED_LOSS)
    checks += _real_table("group-score-matrix", gm.score, GROUP_SCORE_MATRIX)
    checks += _real_table("group-closeness-matrix", gm.closeness, GROUP_CLOSENESS_MATRIX)
    for rule in Rule:
        got = to_partition([classify_group(r, rule) for r in gm.pfn], rule)
        checks.append(_partition(f"group-{rule.value}", got, PARTITIONS[f"group-{rule.value}"]))
    return checks


def _pfn_table(group: str, rows, expected: dict) -> list[Check]:
    out = []
    by_agent = {r.agent: r for r in rows}
    for agent in AGENTS:
        for name, got, want in zip(ACTION_NAMES, by_agent[agent].losses, expected[agent]):
            out.append(_numeric(group, f"R(a_{name}|{agent})", want, (got.mu, got.nu), TOL_TABLE))
    return out


def _real_table(group: str, rows, expected: dict) -> list[Check]:
    out = []
    by_agent = {r.agent: r for r in rows}
    for agent in AGENTS:
        for name, got, want in zip(ACTION_NAMES, by_agent[agent][1:], expected[agent]):
            out.append(_numeric(group, f"{name}|{agent}", (want,), (got,), TOL_TABLE))
    return out
