"""Group (multi-expert) minimum-risk classification.

Each expert supplies a loss function; per-expert expected losses are merged
by the weighted arithmetic mean of their mu and nu components, then the
usual three decision rules apply to the merged rows.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import LossOrderError, ParseError, ShapeError
from .pfn import PFN, check_weights, weighted_average
from .risk import (
    ACTIONS,
    MODE_OF_RULE,
    Action,
    Classification,
    DecisionRow,
    LossFunction,
    LossMode,
    RiskRow,
    Rule,
    classify,
    closeness_rows,
    expected_loss,
    read_json,
    score_rows,
    validate_loss,
)
from .system import PFIS, aggregate_all

# Group rows carry the same three PFN losses as single-expert rows.
GroupRiskRow = RiskRow


@dataclass(frozen=True)
class LossPanel:
    losses: tuple[LossFunction, ...]
    expert_weights: tuple[float, ...]

    def __post_init__(self) -> None:
        losses = tuple(self.losses)
        if not losses:
            raise ShapeError("a panel needs at least one expert")
        if len(self.expert_weights) != len(losses):
            raise ShapeError(f"{len(self.expert_weights)} weights for {len(losses)} experts")
        weights = check_weights(self.expert_weights, "expert weights")
        for i, l in enumerate(losses):
            try:
                validate_loss(l)
            except LossOrderError as exc:
                raise LossOrderError(f"expert {i + 1}: {exc}") from None
        object.__setattr__(self, "losses", losses)
        object.__setattr__(self, "expert_weights", weights)

    @property
    def modes(self) -> frozenset[LossMode]:
        """Monotonicity modes shared by every expert (may be empty)."""
        common = frozenset(LossMode)
        for l in self.losses:
            common &= validate_loss(l)
        return common

    def check_rule(self, rule: Rule | str) -> bool:
        """Warn (and return False) when some expert is not monotone in the rule's mode."""
        rule = Rule(rule)
        ok = MODE_OF_RULE[rule] in self.modes
        if not ok:
            warnings.warn(
                f"not every expert's loss function is monotone in {MODE_OF_RULE[rule].value} mode",
                stacklevel=2,
            )
        return ok

    @classmethod
    def uniform(cls, losses) -> LossPanel:
        losses = tuple(losses)
        return cls(losses, (1.0 / len(losses),) * len(losses))

    def to_dict(self) -> dict:
        return {"weights": list(self.expert_weights), "experts": [l.to_dict() for l in self.losses]}

    @classmethod
    def from_dict(cls, doc: dict) -> LossPanel:
        if not isinstance(doc, dict) or not isinstance(doc.get("experts"), list):
            raise ParseError("panel must be an object with an 'experts' array")
        losses = tuple(LossFunction.from_dict(e) for e in doc["experts"])
        if doc.get("weights") is None:
            if not losses:
                raise ShapeError("a panel needs at least one expert")
            return cls.uniform(losses)
        try:
            weights = tuple(float(w) for w in doc["weights"])
        except (TypeError, ValueError):
            raise ParseError("panel weights are not all numbers") from None
        return cls(losses, weights)


def load_panel(path) -> LossPanel:
    return LossPanel.from_dict(read_json(path))


def group_expected_loss(p: float, panel: LossPanel, action: Action | str) -> PFN:
    per_expert = [expected_loss(p, l, action) for l in panel.losses]
    return weighted_average(per_expert, panel.expert_weights)


class GroupMatrices(NamedTuple):
    pfn: list[GroupRiskRow]
    score: list[DecisionRow]
    closeness: list[DecisionRow]


def group_expected_loss_matrix(s: PFIS, panel: LossPanel) -> list[GroupRiskRow]:
    return [
        GroupRiskRow(agg.agent, *(group_expected_loss(agg.closeness, panel, a) for a in ACTIONS))
        for agg in aggregate_all(s)
    ]


def group_matrices(s: PFIS, panel: LossPanel) -> GroupMatrices:
    rows = group_expected_loss_matrix(s, panel)
    return GroupMatrices(rows, score_rows(rows), closeness_rows(rows))


def classify_group(row: GroupRiskRow, rule: Rule | str) -> Classification:
    return classify(row, rule)
