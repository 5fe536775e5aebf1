"""Pythagorean fuzzy information systems: agents x issues grids of PFNs.

Two on-disk encodings are supported.

CSV::

    agent,c1,c2
    !weights,0.5,0.5        <- optional; uniform when absent
    x1,"1.0,0.0","0.9,0.3"

JSON::

    {"agents": [...], "issues": [...], "weights": [...],
     "values": [[{"mu": 1.0, "nu": 0.0}, ...], ...]}
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import IO, NamedTuple

from .errors import ConstraintError, DomainError, ParseError, ShapeError, UnknownAgentError
from .pfn import PFN, check_weights, closeness, score, weighted_average

WEIGHTS_TAG = "!weights"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class PFIS:
    agents: tuple[str, ...]
    issues: tuple[str, ...]
    values: tuple[tuple[PFN, ...], ...]
    weights: tuple[float, ...] = ()
    # True when the source carried no weights and uniform 1/m was filled in.
    weights_defaulted: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        agents = tuple(str(a) for a in self.agents)
        issues = tuple(str(c) for c in self.issues)
        if not agents:
            raise ShapeError("system has no agents")
        if not issues:
            raise ShapeError("system has no issues")
        _check_unique(agents, "agent")
        _check_unique(issues, "issue")
        values = tuple(tuple(row) for row in self.values)
        if len(values) != len(agents):
            raise ShapeError(f"{len(values)} value rows for {len(agents)} agents")
        for agent, row in zip(agents, values):
            if len(row) != len(issues):
                raise ShapeError(f"agent {agent!r} has {len(row)} cells, expected {len(issues)}")
            for cell in row:
                if not isinstance(cell, PFN):
                    raise TypeError(f"cell of agent {agent!r} is {type(cell).__name__}, not PFN")
        weights = self.weights
        defaulted = self.weights_defaulted
        if not weights:
            weights = (1.0 / len(issues),) * len(issues)
            defaulted = True
        if len(weights) != len(issues):
            raise ShapeError(f"{len(weights)} weights for {len(issues)} issues")
        weights = check_weights(weights, "issue weights")
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "issues", issues)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "weights_defaulted", defaulted)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.agents), len(self.issues)

    def row(self, agent: str) -> tuple[PFN, ...]:
        try:
            return self.values[self.agents.index(agent)]
        except ValueError:
            raise UnknownAgentError(agent) from None

    def without(self, agent: str) -> PFIS:
        """Copy of the system with one agent removed."""
        if agent not in self.agents:
            raise UnknownAgentError(agent)
        i = self.agents.index(agent)
        return PFIS(
            self.agents[:i] + self.agents[i + 1 :],
            self.issues,
            self.values[:i] + self.values[i + 1 :],
            self.weights,
        )


def _check_unique(ids: Sequence[str], what: str) -> None:
    seen = set()
    for x in ids:
        if x in seen:
            raise ShapeError(f"duplicate {what} identifier {x!r}")
        seen.add(x)


@dataclass(frozen=True)
class PythagoreanMatrix:
    rows: tuple[tuple[PFN, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> PFN:
        i, j = ij
        return self.rows[i][j]


def pythagorean_matrix(s: PFIS) -> PythagoreanMatrix:
    return PythagoreanMatrix(s.values)


class AgentAggregate(NamedTuple):
    agent: str
    value: PFN
    score: float
    closeness: float


def aggregate_agent(s: PFIS, agent: str) -> PFN:
    return weighted_average(s.row(agent), s.weights)


def aggregate_all(s: PFIS) -> list[AgentAggregate]:
    out = []
    for agent, row in zip(s.agents, s.values):
        r = weighted_average(row, s.weights)
        out.append(AgentAggregate(agent, r, score(r), closeness(r)))
    return out


# --- parsing -----------------------------------------------------------------


def _cell(mu: object, nu: object, agent: str, issue: str, i: int, j: int) -> PFN:
    where = f"cell ({agent}, {issue}) at row {i + 1}, column {j + 1}"
    try:
        mu_f, nu_f = float(mu), float(nu)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise ParseError(f"{where}: cannot read numbers from {mu!r}, {nu!r}") from None
    try:
        return PFN(mu_f, nu_f)
    except (DomainError, ConstraintError) as exc:
        # Out-of-range degrees are reported as constraint failures with coordinates.
        raise ConstraintError(f"{where}: {exc}") from None


def _parse_weights(raw: Sequence[object]) -> tuple[float, ...]:
    try:
        return tuple(float(w) for w in raw)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise ParseError(f"weights are not all numbers: {list(raw)!r}") from None


def _read_csv(text: str) -> PFIS:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty CSV input")
    header = [c.strip() for c in rows[0]]
    if len(header) < 2 or header[0] != "agent":
        raise ParseError("CSV header must be 'agent,<issue1>,...'")
    issues = header[1:]
    body = rows[1:]
    weights: tuple[float, ...] = ()
    if body and body[0][0].strip() == WEIGHTS_TAG:
        w = body.pop(0)[1:]
        if len(w) != len(issues):
            raise ParseError(f"weights row has {len(w)} entries for {len(issues)} issues")
        weights = _parse_weights(w)
    if not body:
        raise ParseError("CSV contains no agent rows")
    agents, values = [], []
    for i, r in enumerate(body):
        agent = r[0].strip()
        cells = r[1:]
        if len(cells) != len(issues):
            raise ParseError(f"agent {agent!r} (row {i + 1}) has {len(cells)} cells, expected {len(issues)}")
        row = []
        for j, cell in enumerate(cells):
            parts = cell.split(",")
            if len(parts) != 2:
                raise ParseError(
                    f"cell ({agent}, {issues[j]}) at row {i + 1}, column {j + 1}: "
                    f"expected 'mu,nu', got {cell!r}"
                )
            row.append(_cell(parts[0].strip(), parts[1].strip(), agent, issues[j], i, j))
        agents.append(agent)
        values.append(row)
    return _build(agents, issues, values, weights)


def _read_json(text: str) -> PFIS:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("JSON system must be an object")
    try:
        agents = [str(a) for a in doc["agents"]]
        issues = [str(c) for c in doc["issues"]]
        raw_values = doc["values"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"JSON system is missing field {exc}") from None
    if not agents:
        raise ParseError("system has no agents")
    if not issues:
        raise ParseError("system has no issues")
    if not isinstance(raw_values, list) or len(raw_values) != len(agents):
        raise ParseError(f"'values' must hold one row per agent ({len(agents)})")
    weights: tuple[float, ...] = ()
    if doc.get("weights") is not None:
        if len(doc["weights"]) != len(issues):
            raise ParseError(f"{len(doc['weights'])} weights for {len(issues)} issues")
        weights = _parse_weights(doc["weights"])
    values = []
    for i, (agent, raw_row) in enumerate(zip(agents, raw_values)):
        if not isinstance(raw_row, list) or len(raw_row) != len(issues):
            raise ParseError(f"agent {agent!r} (row {i + 1}) must have {len(issues)} cells")
        row = []
        for j, cell in enumerate(raw_row):
            if not isinstance(cell, dict) or "mu" not in cell or "nu" not in cell:
                raise ParseError(
                    f"cell ({agent}, {issues[j]}) at row {i + 1}, column {j + 1}: "
                    "expected an object with 'mu' and 'nu'"
                )
            row.append(_cell(cell["mu"], cell["nu"], agent, issues[j], i, j))
        values.append(row)
    return _build(agents, issues, values, weights)


def _build(agents, issues, values, weights) -> PFIS:
    try:
        return PFIS(tuple(agents), tuple(issues), tuple(map(tuple, values)), tuple(weights))
    except ShapeError as exc:
        raise ParseError(str(exc)) from None


def load_system(source: IO[bytes] | IO[str] | bytes | str, format: str = "csv") -> PFIS:
    """Parse and validate a system from a stream (or raw bytes/text).

    Raises ``ParseError`` for malformed input, ``ConstraintError`` naming the
    first invalid cell in row-major order, and ``WeightError`` for bad weights.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    data = source if isinstance(source, (bytes, str)) else source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    data = data.lstrip("﻿")
    return _read_csv(data) if format == "csv" else _read_json(data)


def load_system_file(path, format: str | None = None) -> PFIS:
    format = format or guess_format(path)
    with open(path, "rb") as fh:
        return load_system(fh, format)


def guess_format(path) -> str:
    return "json" if str(path).lower().endswith(".json") else "csv"


def dump_system(s: PFIS, format: str = "csv", include_weights: bool = True) -> str:
    """Serialise with ``repr`` floats so that ``load_system`` recovers ``s`` exactly."""
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["agent", *s.issues])
        if include_weights:
            w.writerow([WEIGHTS_TAG, *(repr(k) for k in s.weights)])
        for agent, row in zip(s.agents, s.values):
            w.writerow([agent, *(f"{g.mu!r},{g.nu!r}" for g in row)])
        return buf.getvalue()
    if format == "json":
        doc = {
            "agents": list(s.agents),
            "issues": list(s.issues),
            "values": [[{"mu": g.mu, "nu": g.nu} for g in row] for row in s.values],
        }
        if include_weights:
            doc["weights"] = list(s.weights)
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
