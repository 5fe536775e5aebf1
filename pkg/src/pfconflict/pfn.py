"""Pythagorean fuzzy numbers.

A PFN is a pair ``(mu, nu)`` of membership and non-membership degrees in
``[0, 1]`` with ``mu**2 + nu**2 <= 1``.  Everything here is a pure function
over immutable values.

    >>> g = PFN(0.6, 0.5) + PFN(0.5, 0.6)
    >>> round(g.mu ** 2, 12), round(g.nu, 12)
    (0.52, 0.3)
"""

from __future__ import annotations

import enum
import math
import os
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import ConstraintError, DomainError, ShapeError, WeightError

EPS_VALID = 1e-9
EPS_WEIGHT = 1e-9
DEFAULT_EPS_CMP = 1e-9
EPS_ENV_VAR = "PFCONFLICT_EPS"


def cmp_eps() -> float:
    """Tolerance used by every order comparison (``PFCONFLICT_EPS`` overrides it)."""
    raw = os.environ.get(EPS_ENV_VAR)
    if not raw:
        return DEFAULT_EPS_CMP
    try:
        eps = float(raw)
    except ValueError:
        raise DomainError(f"{EPS_ENV_VAR}={raw!r} is not a number") from None
    if not eps >= 0.0:
        raise DomainError(f"{EPS_ENV_VAR} must be non-negative, got {raw!r}")
    return eps


def _unit_interval(name: str, x: float) -> float:
    x = float(x)
    if not -EPS_VALID <= x <= 1.0 + EPS_VALID:
        raise DomainError(f"{name}={x!r} is outside [0, 1]")
    return min(max(x, 0.0), 1.0)


@dataclass(frozen=True)
class PFN:
    mu: float
    nu: float

    def __post_init__(self) -> None:
        mu = _unit_interval("mu", self.mu)
        nu = _unit_interval("nu", self.nu)
        if mu * mu + nu * nu > 1.0 + EPS_VALID:
            raise ConstraintError(
                f"mu^2 + nu^2 = {mu * mu + nu * nu!r} > 1 for P({mu!r}, {nu!r})"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def hesitancy(self) -> float:
        return hesitancy(self)

    def __add__(self, other: PFN) -> PFN:
        if not isinstance(other, PFN):
            return NotImplemented
        return pfn_add(self, other)

    def __rmul__(self, k: float) -> PFN:
        if isinstance(k, bool) or not isinstance(k, (int, float)):
            return NotImplemented
        return pfn_scale(k, self)

    def __str__(self) -> str:
        return f"P({self.mu:g},{self.nu:g})"


IDEAL = PFN(1.0, 0.0)
ANTI_IDEAL = PFN(0.0, 1.0)


class Order(enum.Enum):
    """Outcome of comparing two PFNs under the coordinate-wise quasi-order."""

    LE = "less_or_equal"
    GE = "greater_or_equal"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    @property
    def is_le(self) -> bool:
        return self in (Order.LE, Order.EQUAL)

    @property
    def is_ge(self) -> bool:
        return self in (Order.GE, Order.EQUAL)


def pfn_new(mu: float, nu: float) -> PFN:
    return PFN(mu, nu)


def hesitancy(g: PFN) -> float:
    """Hesitancy degree sqrt(1 - mu^2 - nu^2); the radicand is clamped to [0, 1]."""
    r = 1.0 - g.mu * g.mu - g.nu * g.nu
    return math.sqrt(min(max(r, 0.0), 1.0))


def _hesitancy_sq(g: PFN) -> float:
    return min(max(1.0 - g.mu * g.mu - g.nu * g.nu, 0.0), 1.0)


def quasi_compare(g1: PFN, g2: PFN, eps: float | None = None) -> Order:
    """Compare ``g1`` to ``g2``: ``GE`` iff mu1 >= mu2 and nu1 <= nu2 (within eps)."""
    if eps is None:
        eps = cmp_eps()
    ge = g1.mu >= g2.mu - eps and g1.nu <= g2.nu + eps
    le = g1.mu <= g2.mu + eps and g1.nu >= g2.nu - eps
    if ge and le:
        return Order.EQUAL
    if ge:
        return Order.GE
    if le:
        return Order.LE
    return Order.INCOMPARABLE


def log_complement(x: float, k: float) -> float:
    """k * log(1 - x), with the 0 * log(0) = 0 convention."""
    if k == 0.0:
        return 0.0
    if x >= 1.0:
        return -math.inf
    return k * math.log1p(-x)


def pfn_from_sq(mu2: float, nu: float) -> PFN:
    """PFN with the given mu^2 and nu, capped so that mu^2 + nu^2 <= 1.

    The cap only bites at rounding level, or when the inputs used the
    EPS_VALID slack or nu^2 underflowed, and keeps every result valid.
    """
    mu2 = min(mu2, 1.0 - nu * nu)
    return PFN(math.sqrt(min(max(mu2, 0.0), 1.0)), nu)


def pfn_add(g1: PFN, g2: PFN) -> PFN:
    # mu^2 = a + b - ab, summed as a + b (1 - a) with a >= b: accurate for small
    # degrees and exactly 1 when either side is P(1, .).
    a, b = sorted((g1.mu * g1.mu, g2.mu * g2.mu), reverse=True)
    return pfn_from_sq(a + b * (1.0 - a), g1.nu * g2.nu)


def pfn_scale(k: float, g: PFN) -> PFN:
    k = float(k)
    if not k >= 0.0:
        raise DomainError(f"scale factor must be >= 0, got {k!r}")
    if k == 1.0:
        return g
    if k == 0.0:
        return ANTI_IDEAL
    # 1 - (1 - mu^2)^k via expm1/log1p keeps precision when mu is tiny.
    return pfn_from_sq(-math.expm1(log_complement(g.mu * g.mu, k)), g.nu**k)


def score(g: PFN) -> float:
    return g.mu * g.mu - g.nu * g.nu


def distance(g1: PFN, g2: PFN) -> float:
    """Half the summed absolute differences of squared mu, nu and hesitancy."""
    return 0.5 * (
        abs(g1.mu * g1.mu - g2.mu * g2.mu)
        + abs(g1.nu * g1.nu - g2.nu * g2.nu)
        + abs(_hesitancy_sq(g1) - _hesitancy_sq(g2))
    )


def closeness(g: PFN) -> float:
    """Relative closeness to P(1, 0) versus P(0, 1): (1 - nu^2) / (2 - mu^2 - nu^2)."""
    nu2 = g.nu * g.nu
    return (1.0 - nu2) / (2.0 - g.mu * g.mu - nu2)


def check_weights(ks: Sequence[float], what: str = "weights") -> tuple[float, ...]:
    ks = tuple(float(k) for k in ks)
    if not ks:
        raise WeightError(f"{what} must be non-empty")
    for i, k in enumerate(ks):
        if not k >= 0.0 or math.isinf(k):
            raise WeightError(f"{what}[{i}] = {k!r} is not a non-negative number")
    total = math.fsum(ks)
    if abs(total - 1.0) > EPS_WEIGHT:
        raise WeightError(f"{what} sum to {total!r}, expected 1")
    return ks


def weighted_average(gs: Sequence[PFN], ks: Sequence[float]) -> PFN:
    """Weighted arithmetic mean of the mu and nu components.

    Weights must be non-negative and sum to 1; they are never renormalised.
    """
    if len(gs) != len(ks):
        raise ShapeError(f"{len(gs)} values but {len(ks)} weights")
    if not gs:
        raise ShapeError("cannot average an empty collection")
    ks = check_weights(ks)
    mu = math.fsum(k * g.mu for k, g in zip(ks, gs))
    nu = math.fsum(k * g.nu for k, g in zip(ks, gs))
    return PFN(mu, nu)


def score_compare(g1: PFN, g2: PFN, eps: float | None = None) -> int:
    """Sign of S(g1) - S(g2), with differences inside eps counted as ties."""
    return _sign(score(g1) - score(g2), eps)


def closeness_compare(g1: PFN, g2: PFN, eps: float | None = None) -> int:
    return _sign(closeness(g1) - closeness(g2), eps)


def _sign(d: float, eps: float | None) -> int:
    if eps is None:
        eps = cmp_eps()
    if d > eps:
        return 1
    if d < -eps:
        return -1
    return 0
