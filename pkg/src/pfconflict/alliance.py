"""Positive / central / negative alliances from aggregated attitudes.

Three regimes compare each agent's aggregate against a pair of thresholds:

* ``pfn``: the quasi-order on PFNs (partial, so some agents may stay
  unclassified),
* ``score``: ``S = mu^2 - nu^2`` against ``-1 <= beta < alpha <= 1``,
* ``closeness``: the closeness index against ``0 <= beta < alpha <= 1``.

Ties go to the outer regions: ``>= alpha`` is positive, ``<= beta`` negative.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import ThresholdError
from .pfn import PFN, cmp_eps, quasi_compare
from .system import PFIS, aggregate_all


class Regime(enum.Enum):
    PFN_THRESHOLD = "pfn"
    SCORE_THRESHOLD = "score"
    CLOSENESS_THRESHOLD = "closeness"


@dataclass(frozen=True)
class Thresholds:
    pfn_upper: PFN | None = None
    pfn_lower: PFN | None = None
    score_alpha: float | None = None
    score_beta: float | None = None
    closeness_alpha: float | None = None
    closeness_beta: float | None = None


@dataclass(frozen=True)
class AlliancePartition:
    positive: tuple[str, ...]
    central: tuple[str, ...]
    negative: tuple[str, ...]
    unclassified: tuple[str, ...]
    regime: Regime

    def region_of(self, agent: str) -> str:
        for name in ("positive", "central", "negative", "unclassified"):
            if agent in getattr(self, name):
                return name
        raise KeyError(agent)

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "positive": list(self.positive),
            "central": list(self.central),
            "negative": list(self.negative),
            "unclassified": list(self.unclassified),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> AlliancePartition:
        return cls(
            tuple(doc["positive"]),
            tuple(doc["central"]),
            tuple(doc["negative"]),
            tuple(doc["unclassified"]),
            Regime(doc["regime"]),
        )


def _assemble(labels: list[tuple[str, str]], regime: Regime) -> AlliancePartition:
    groups: dict[str, list[str]] = {"positive": [], "central": [], "negative": [], "unclassified": []}
    for agent, region in labels:
        groups[region].append(agent)
    return AlliancePartition(
        tuple(groups["positive"]),
        tuple(groups["central"]),
        tuple(groups["negative"]),
        tuple(groups["unclassified"]),
        regime,
    )


def partition_pfn(s: PFIS, t: Thresholds) -> AlliancePartition:
    upper, lower = t.pfn_upper, t.pfn_lower
    if upper is None or lower is None:
        raise ThresholdError("quasi-order regime needs both pfn_upper and pfn_lower")
    eps = cmp_eps()
    if not quasi_compare(lower, upper, eps).is_le:
        raise ThresholdError(f"lower threshold {lower} is not below upper threshold {upper}")
    labels = []
    for agg in aggregate_all(s):
        vs_upper = quasi_compare(agg.value, upper, eps)
        vs_lower = quasi_compare(agg.value, lower, eps)
        if vs_upper.is_ge:
            region = "positive"
        elif vs_lower.is_le:
            region = "negative"
        elif vs_upper.is_le and vs_lower.is_ge:
            region = "central"
        else:
            region = "unclassified"
        labels.append((agg.agent, region))
    return _assemble(labels, Regime.PFN_THRESHOLD)


def _check_band(alpha: float | None, beta: float | None, lo: float, what: str) -> tuple[float, float]:
    if alpha is None or beta is None:
        raise ThresholdError(f"{what} regime needs both alpha and beta")
    alpha, beta = float(alpha), float(beta)
    if not (lo <= beta < alpha <= 1.0):
        raise ThresholdError(f"{what} thresholds need {lo:g} <= beta < alpha <= 1, got alpha={alpha!r}, beta={beta!r}")
    return alpha, beta


def _band_region(v: float, alpha: float, beta: float, eps: float) -> str:
    if v >= alpha - eps:
        return "positive"
    if v <= beta + eps:
        return "negative"
    return "central"


def partition_score(s: PFIS, t: Thresholds) -> AlliancePartition:
    alpha, beta = _check_band(t.score_alpha, t.score_beta, -1.0, "score")
    eps = cmp_eps()
    labels = [(a.agent, _band_region(a.score, alpha, beta, eps)) for a in aggregate_all(s)]
    return _assemble(labels, Regime.SCORE_THRESHOLD)


def partition_closeness(s: PFIS, t: Thresholds) -> AlliancePartition:
    alpha, beta = _check_band(t.closeness_alpha, t.closeness_beta, 0.0, "closeness")
    eps = cmp_eps()
    labels = [(a.agent, _band_region(a.closeness, alpha, beta, eps)) for a in aggregate_all(s)]
    return _assemble(labels, Regime.CLOSENESS_THRESHOLD)


def partition(s: PFIS, t: Thresholds, regime: Regime | str) -> AlliancePartition:
    regime = Regime(regime)
    if regime is Regime.PFN_THRESHOLD:
        return partition_pfn(s, t)
    if regime is Regime.SCORE_THRESHOLD:
        return partition_score(s, t)
    return partition_closeness(s, t)
