"""Bayesian minimum-risk classification with a single PFN-valued loss function.

For an agent whose aggregate has closeness index ``p``, the expected loss of
action ``a`` mixes the two conditional losses::

    R(a|x) = p * lambda_aP  (+)  (1 - p) * lambda_aN

which collapses to the product form

    P( sqrt(1 - (1 - mu_aP^2)^p (1 - mu_aN^2)^(1-p)),  nu_aP^p nu_aN^(1-p) ).

The agent is then assigned to the action of minimal loss, compared by the
quasi-order, by score or by closeness index.  Ties resolve P, then B, then N.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from .alliance import AlliancePartition, Regime
from .errors import ConstraintError, DomainError, LossOrderError, ParseError
from .pfn import PFN, closeness, cmp_eps, log_complement, pfn_from_sq, quasi_compare, score
from .system import PFIS, aggregate_all


class Action(enum.Enum):
    P = "P"
    B = "B"
    N = "N"


ACTIONS = (Action.P, Action.B, Action.N)


class LossMode(enum.Enum):
    QUASI_ORDER = "quasi_order"
    SCORE = "score"
    CLOSENESS = "closeness"


class Region(enum.Enum):
    POSITIVE = "positive"
    CENTRAL = "central"
    NEGATIVE = "negative"
    UNCLASSIFIED = "unclassified"


class Rule(enum.Enum):
    PFN_ORDER = "pfn"
    SCORE = "score"
    CLOSENESS = "closeness"


LOSS_KEYS = ("pp", "bp", "np", "pn", "bn", "nn")
REGION_OF_ACTION = {Action.P: Region.POSITIVE, Action.B: Region.CENTRAL, Action.N: Region.NEGATIVE}
MODE_OF_RULE = {Rule.PFN_ORDER: LossMode.QUASI_ORDER, Rule.SCORE: LossMode.SCORE, Rule.CLOSENESS: LossMode.CLOSENESS}


@dataclass(frozen=True)
class LossFunction:
    """Six PFN losses; ``pp`` is the loss of action P when the agent is in X, etc."""

    pp: PFN
    bp: PFN
    np_: PFN
    pn: PFN
    bn: PFN
    nn: PFN

    def pair(self, action: Action) -> tuple[PFN, PFN]:
        """(loss if x in X, loss if x not in X) for ``action``."""
        if action is Action.P:
            return self.pp, self.pn
        if action is Action.B:
            return self.bp, self.bn
        return self.np_, self.nn

    def to_dict(self) -> dict:
        cells = (self.pp, self.bp, self.np_, self.pn, self.bn, self.nn)
        return {k: {"mu": g.mu, "nu": g.nu} for k, g in zip(LOSS_KEYS, cells)}

    @classmethod
    def from_dict(cls, doc: dict) -> LossFunction:
        """Build from ``{"pp": {"mu": .., "nu": ..}, "bp": .., ..., "nn": ..}``."""
        if not isinstance(doc, dict):
            raise ParseError("loss function must be a JSON object")
        cells = []
        for key in LOSS_KEYS:
            cell = doc.get(key)
            if not isinstance(cell, dict) or "mu" not in cell or "nu" not in cell:
                raise ParseError(f"loss entry {key!r} must be an object with 'mu' and 'nu'")
            try:
                cells.append(PFN(float(cell["mu"]), float(cell["nu"])))
            except (TypeError, ValueError) as exc:
                if isinstance(exc, (DomainError, ConstraintError)):
                    raise type(exc)(f"loss entry {key!r}: {exc}") from None
                raise ParseError(f"loss entry {key!r} is not numeric") from None
        return cls(*cells)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None


def load_loss(path) -> LossFunction:
    return LossFunction.from_dict(read_json(path))


def _chains_hold(l: LossFunction, le) -> bool:
    return le(l.pp, l.bp) and le(l.bp, l.np_) and le(l.nn, l.bn) and le(l.bn, l.pn)


def loss_modes(l: LossFunction, eps: float | None = None) -> frozenset[LossMode]:
    """Every mode whose two monotonicity chains hold (possibly empty)."""
    if eps is None:
        eps = cmp_eps()
    modes = set()
    if _chains_hold(l, lambda a, b: quasi_compare(a, b, eps).is_le):
        modes.add(LossMode.QUASI_ORDER)
    if _chains_hold(l, lambda a, b: score(a) <= score(b) + eps):
        modes.add(LossMode.SCORE)
    if _chains_hold(l, lambda a, b: closeness(a) <= closeness(b) + eps):
        modes.add(LossMode.CLOSENESS)
    return frozenset(modes)


def validate_loss(l: LossFunction) -> frozenset[LossMode]:
    """Check PP <= BP <= NP and NN <= BN <= PN under at least one comparison."""
    modes = loss_modes(l)
    if not modes:
        raise LossOrderError(
            "loss function is not monotone under the quasi-order, the score or the closeness index"
        )
    return modes


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"conditional probability must lie in [0, 1], got {p!r}")
    return p


def _product_terms(p: float, l: LossFunction, action: Action) -> tuple[float, float]:
    """(log of the product of (1 - mu^2) powers, product of nu powers)."""
    x, y = l.pair(action)
    q = 1.0 - p
    log_t = log_complement(x.mu * x.mu, p) + log_complement(y.mu * y.mu, q)
    v = x.nu**p * y.nu**q
    return log_t, v


def expected_loss(p: float, l: LossFunction, action: Action | str) -> PFN:
    action = Action(action)
    p = _check_p(p)
    x, y = l.pair(action)
    if p == 1.0:
        return x
    if p == 0.0:
        return y
    log_t, v = _product_terms(p, l, action)
    return pfn_from_sq(-math.expm1(log_t), v)


def expected_score(p: float, l: LossFunction, action: Action | str) -> float:
    """Score of the expected loss straight from the product terms: 1 - t - v^2."""
    log_t, v = _product_terms(_check_p(p), l, Action(action))
    return -math.expm1(log_t) - v * v


def expected_closeness(p: float, l: LossFunction, action: Action | str) -> float:
    # mu^2 = 1 - t and nu^2 = v^2, so 2 - mu^2 - nu^2 = 1 + t - v^2.
    log_t, v = _product_terms(_check_p(p), l, Action(action))
    t = math.exp(log_t)
    v2 = v * v
    return (1.0 - v2) / (1.0 + t - v2)


@dataclass(frozen=True)
class RiskRow:
    agent: str
    loss_p: PFN
    loss_b: PFN
    loss_n: PFN

    @property
    def losses(self) -> tuple[PFN, PFN, PFN]:
        return self.loss_p, self.loss_b, self.loss_n


class DecisionRow(NamedTuple):
    """One agent's real-valued (score or closeness) losses for P, B, N."""

    agent: str
    p: float
    b: float
    n: float


@dataclass(frozen=True)
class Classification:
    agent: str
    region: Region
    rule: Rule


def expected_loss_row(agent: str, p: float, l: LossFunction) -> RiskRow:
    return RiskRow(agent, *(expected_loss(p, l, a) for a in ACTIONS))


def expected_loss_matrix(s: PFIS, l: LossFunction) -> list[RiskRow]:
    return [expected_loss_row(agg.agent, agg.closeness, l) for agg in aggregate_all(s)]


def score_rows(rows: list[RiskRow]) -> list[DecisionRow]:
    return [DecisionRow(r.agent, *(score(g) for g in r.losses)) for r in rows]


def closeness_rows(rows: list[RiskRow]) -> list[DecisionRow]:
    return [DecisionRow(r.agent, *(closeness(g) for g in r.losses)) for r in rows]


def score_matrix(s: PFIS, l: LossFunction) -> list[DecisionRow]:
    return score_rows(expected_loss_matrix(s, l))


def closeness_matrix(s: PFIS, l: LossFunction) -> list[DecisionRow]:
    return closeness_rows(expected_loss_matrix(s, l))


def classify_pfn_order(row: RiskRow) -> Classification:
    """Minimum expected loss under the quasi-order; unclassified if no action is <= both others."""
    eps = cmp_eps()
    losses = row.losses
    for i, action in enumerate(ACTIONS):
        others = (losses[j] for j in range(3) if j != i)
        if all(quasi_compare(losses[i], o, eps).is_le for o in others):
            return Classification(row.agent, REGION_OF_ACTION[action], Rule.PFN_ORDER)
    return Classification(row.agent, Region.UNCLASSIFIED, Rule.PFN_ORDER)


def _argmin_action(values: tuple[float, float, float], eps: float) -> Action:
    lowest = min(values)
    for action, v in zip(ACTIONS, values):
        if v <= lowest + eps:
            return action
    raise AssertionError("unreachable")


def classify_score(row: DecisionRow) -> Classification:
    return Classification(row.agent, REGION_OF_ACTION[_argmin_action(row[1:], cmp_eps())], Rule.SCORE)


def classify_closeness(row: DecisionRow) -> Classification:
    return Classification(row.agent, REGION_OF_ACTION[_argmin_action(row[1:], cmp_eps())], Rule.CLOSENESS)


def classify(row: RiskRow, rule: Rule | str) -> Classification:
    """Classify a PFN-valued risk row under any of the three rules."""
    rule = Rule(rule)
    if rule is Rule.PFN_ORDER:
        return classify_pfn_order(row)
    if rule is Rule.SCORE:
        return classify_score(score_rows([row])[0])
    return classify_closeness(closeness_rows([row])[0])


def to_partition(classes: list[Classification], rule: Rule | str) -> AlliancePartition:
    """Group per-agent classifications into an alliance partition (agent order kept)."""
    groups: dict[Region, list[str]] = {r: [] for r in Region}
    for c in classes:
        groups[c.region].append(c.agent)
    return AlliancePartition(
        tuple(groups[Region.POSITIVE]),
        tuple(groups[Region.CENTRAL]),
        tuple(groups[Region.NEGATIVE]),
        tuple(groups[Region.UNCLASSIFIED]),
        Regime(Rule(rule).value),
    )
