import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pfconflict import (
    PFIS,
    PFN,
    Action,
    DomainError,
    LossFunction,
    LossMode,
    Region,
    RiskRow,
    Rule,
    classify,
    classify_closeness,
    classify_pfn_order,
    classify_score,
    closeness,
    closeness_matrix,
    expected_loss,
    expected_loss_matrix,
    pfn_add,
    pfn_scale,
    score,
    score_matrix,
    to_partition,
    validate_loss,
)
from pfconflict.errors import LossOrderError, ParseError
from pfconflict.risk import DecisionRow, expected_closeness, expected_score, loss_modes

from conftest import pfns

# Expected losses for the reference loss function, evaluated with 50-digit
# arithmetic by composing the two scaled terms directly.
ORACLE_P = {
    "x1": 0.83682583304706286,
    "x2": 0.40829875518672199,
    "x3": 0.27272727272727273,
}
ORACLE_EL = {
    ("x1", "P"): (0.49372234477387733, 0.63804212010605107),
    ("x1", "B"): (0.58585019518032099, 0.51509856287200981),
    ("x1", "N"): (0.86747601985911675, 0.3520694548114902),
    ("x2", "B"): (0.54500410119073839, 0.55695697374954257),
    ("x3", "N"): (0.61873489451713629, 0.61223294579987708),
}


def flat_loss(g: PFN) -> LossFunction:
    return LossFunction(g, g, g, g, g, g)


@st.composite
def quasi_monotone_losses(draw):
    """Loss functions satisfying both quasi-order chains, built from sorted chains."""

    def chain():
        c = draw(st.floats(0, 1))
        xs = sorted(draw(st.lists(st.floats(0, 1), min_size=3, max_size=3)))
        return [PFN(c * x, c * (1 - x)) for x in xs]

    pp, bp, np_ = chain()
    nn, bn, pn = chain()
    return LossFunction(pp, bp, np_, pn, bn, nn)


class TestValidateLoss:
    def test_reference_loss(self, loss):
        assert LossMode.QUASI_ORDER in validate_loss(loss)

    def test_flat_loss_has_every_mode(self):
        assert validate_loss(flat_loss(PFN(0.5, 0.5))) == frozenset(LossMode)

    def test_broken_chain(self):
        g = PFN(0.5, 0.5)
        bad = LossFunction(PFN(0.9, 0.1), PFN(0.1, 0.9), g, g, g, g)
        assert loss_modes(bad) == frozenset()
        with pytest.raises(LossOrderError):
            validate_loss(bad)

    def test_round_trip(self, loss):
        assert LossFunction.from_dict(loss.to_dict()) == loss

    def test_missing_entry(self, loss):
        doc = loss.to_dict()
        del doc["bn"]
        with pytest.raises(ParseError, match="'bn'"):
            LossFunction.from_dict(doc)


class TestExpectedLoss:
    @pytest.mark.parametrize("agent,action", sorted(ORACLE_EL))
    def test_oracle_values(self, loss, agent, action):
        g = expected_loss(ORACLE_P[agent], loss, action)
        assert (g.mu, g.nu) == pytest.approx(ORACLE_EL[agent, action], abs=1e-12)

    def test_published_spot_values(self, loss):
        g = expected_loss(0.8368, loss, Action.P)
        assert (g.mu, g.nu) == pytest.approx((0.4937, 0.6380), abs=2e-3)
        g = expected_loss(0.4083, loss, Action.B)
        assert (g.mu, g.nu) == pytest.approx((0.5450, 0.5570), abs=2e-3)

    @pytest.mark.parametrize("action", list(Action))
    def test_endpoints(self, loss, action):
        x, y = loss.pair(action)
        assert expected_loss(1.0, loss, action) == x
        assert expected_loss(0.0, loss, action) == y

    @pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
    def test_probability_out_of_range(self, loss, p):
        with pytest.raises(DomainError):
            expected_loss(p, loss, "P")

    def test_zero_to_the_zero(self):
        # nu = 0 at the P end with p = 0 must give factor 1, not 0.
        l = LossFunction(PFN(0.2, 0.0), PFN(0.5, 0.5), PFN(0.9, 0.1), PFN(0.9, 0.1), PFN(0.5, 0.5), PFN(0.2, 0.6))
        assert expected_loss(0.0, l, "P") == PFN(0.9, 0.1)
        assert expected_loss(1e-300, l, "P").nu == 0.0

    @given(st.floats(0, 1), quasi_monotone_losses(), st.sampled_from(list(Action)))
    def test_closed_form_matches_composition(self, p, l, action):
        x, y = l.pair(action)
        two_term = pfn_add(pfn_scale(p, x), pfn_scale(1 - p, y))
        g = expected_loss(p, l, action)
        assert g.mu == pytest.approx(two_term.mu, abs=1e-12)
        assert g.nu == pytest.approx(two_term.nu, abs=1e-12)

    @given(st.floats(0, 1), quasi_monotone_losses(), st.sampled_from(list(Action)))
    def test_product_form_score_and_closeness(self, p, l, action):
        g = expected_loss(p, l, action)
        assert expected_score(p, l, action) == pytest.approx(score(g), abs=1e-12)
        assert expected_closeness(p, l, action) == pytest.approx(closeness(g), abs=1e-12)


class TestMatrices:
    def test_agent_order_and_p(self, table, loss):
        rows = expected_loss_matrix(table, loss)
        assert [r.agent for r in rows] == list(table.agents)
        g = rows[0].loss_p
        assert (g.mu, g.nu) == pytest.approx(ORACLE_EL["x1", "P"], abs=1e-12)

    def test_ideal_agent_gets_x_column(self, loss):
        s = PFIS(("a",), ("c1", "c2"), ((PFN(1, 0), PFN(1, 0)),))
        (row,) = expected_loss_matrix(s, loss)
        assert row.losses == (loss.pp, loss.bp, loss.np_)

    def test_anti_ideal_agent_closeness_row(self, loss):
        s = PFIS(("a",), ("c",), ((PFN(0, 1),),))
        (row,) = closeness_matrix(s, loss)
        assert tuple(row[1:]) == (closeness(loss.pn), closeness(loss.bn), closeness(loss.nn))

    def test_deleting_an_agent_leaves_other_rows(self, table, loss):
        full = {r.agent: r for r in expected_loss_matrix(table, loss)}
        for r in expected_loss_matrix(table.without("x2"), loss):
            assert r == full[r.agent]

    def test_score_and_closeness_are_entrywise(self, table, loss):
        rows = expected_loss_matrix(table, loss)
        for r, sr, cr in zip(rows, score_matrix(table, loss), closeness_matrix(table, loss)):
            assert tuple(sr[1:]) == tuple(score(g) for g in r.losses)
            assert tuple(cr[1:]) == tuple(closeness(g) for g in r.losses)

    def test_first_score_row(self, table, loss):
        row = score_matrix(table, loss)[0]
        assert tuple(row[1:]) == pytest.approx((-0.1633, 0.0779, 0.6286), abs=2e-3)

    def test_first_closeness_row(self, table, loss):
        row = closeness_matrix(table, loss)[0]
        assert tuple(row[1:]) == pytest.approx((0.4395, 0.5280, 0.7797), abs=2e-3)


def _regions(rows, rule):
    p = to_partition([classify(r, rule) for r in rows], rule)
    return p.positive, p.central, p.negative, p.unclassified


class TestClassification:
    def test_quasi_order_rule(self, table, loss):
        rows = expected_loss_matrix(table, loss)
        assert _regions(rows, Rule.PFN_ORDER) == (("x1",), ("x2", "x5", "x6"), (), ("x3", "x4"))

    @pytest.mark.parametrize("rule", [Rule.SCORE, Rule.CLOSENESS])
    def test_total_rules(self, table, loss, rule):
        rows = expected_loss_matrix(table, loss)
        assert _regions(rows, rule) == (("x1",), ("x2", "x3", "x4", "x5", "x6"), (), ())

    def test_equal_losses_go_positive(self):
        g = PFN(0.4, 0.4)
        row = RiskRow("a", g, g, g)
        for rule in Rule:
            assert classify(row, rule).region is Region.POSITIVE

    def test_b_beats_n_on_tie(self):
        row = DecisionRow("a", 0.5, 0.1, 0.1)
        assert classify_score(row).region is Region.CENTRAL
        assert classify_closeness(row).region is Region.CENTRAL

    def test_dominated_n_is_negative(self):
        row = RiskRow("a", PFN(0.6, 0.3), PFN(0.5, 0.4), PFN(0.2, 0.8))
        assert classify_pfn_order(row).region is Region.NEGATIVE

    def test_no_minimum_is_unclassified(self):
        row = RiskRow("a", PFN(0.5, 0.5), PFN(0.4, 0.4), PFN(0.6, 0.6))
        assert classify_pfn_order(row).region is Region.UNCLASSIFIED

    def test_negative_region_under_score(self):
        # A minimal N loss puts the agent in the negative alliance under both total rules.
        row = DecisionRow("a", 0.5, 0.3, -0.2)
        assert classify_score(row).region is Region.NEGATIVE
        assert classify_closeness(row).region is Region.NEGATIVE


@given(st.lists(pfns(), min_size=3, max_size=3))
def test_total_rules_never_unclassified(gs):
    row = RiskRow("a", *gs)
    assert classify(row, Rule.SCORE).region is not Region.UNCLASSIFIED
    assert classify(row, Rule.CLOSENESS).region is not Region.UNCLASSIFIED


@given(st.lists(pfns(), min_size=3, max_size=3))
def test_quasi_order_minimum_is_score_minimum(gs):
    row = RiskRow("a", *gs)
    scores = [score(g) for g in gs]
    assume(all(abs(a - b) > 1e-9 for i, a in enumerate(scores) for b in scores[i + 1 :]))
    c = classify_pfn_order(row)
    if c.region is not Region.UNCLASSIFIED:
        assert classify(row, Rule.SCORE).region is c.region


def test_random_reference_perturbations_stay_valid(loss):
    rng = random.Random(7)
    for _ in range(200):
        p = rng.random()
        for a in Action:
            g = expected_loss(p, loss, a)
            assert g.mu**2 + g.nu**2 <= 1 + 1e-9
