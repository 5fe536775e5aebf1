import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfconflict import (
    PFN,
    Action,
    LossFunction,
    LossMode,
    LossPanel,
    Rule,
    classify,
    classify_group,
    closeness,
    expected_loss,
    expected_loss_matrix,
    group_expected_loss,
    group_matrices,
    score,
    to_partition,
)
from pfconflict.errors import LossOrderError, ShapeError, WeightError
from pfconflict.risk import closeness_rows, score_rows

from conftest import weight_vectors
from test_risk import quasi_monotone_losses
from test_system import systems

# Group expected losses for the reference panel, 50-digit arithmetic.
ORACLE_GL = {
    (0.83682583304706286, "P"): (0.46232999171454619, 0.67305671708871624),
    (0.27272727272727273, "N"): (0.51857634469684477, 0.56790048826667258),
}


class TestPanel:
    def test_reference_panel(self, panel):
        assert len(panel.losses) == 3
        assert sum(panel.expert_weights) == pytest.approx(1.0, abs=1e-12)

    def test_empty_panel(self):
        with pytest.raises(ShapeError):
            LossPanel((), ())

    def test_weights_must_sum_to_one(self, loss):
        with pytest.raises(WeightError):
            LossPanel((loss, loss), (0.5, 0.6))

    def test_every_expert_is_validated(self, loss):
        g = PFN(0.5, 0.5)
        bad = LossFunction(PFN(0.9, 0.1), PFN(0.1, 0.9), g, g, g, g)
        with pytest.raises(LossOrderError, match="expert 2"):
            LossPanel((loss, bad), (0.5, 0.5))

    def test_default_weights_are_uniform(self, loss):
        p = LossPanel.from_dict({"experts": [loss.to_dict()] * 4})
        assert p.expert_weights == (0.25,) * 4

    def test_round_trip(self, panel):
        assert LossPanel.from_dict(panel.to_dict()) == panel

    def test_rule_warning(self, loss):
        # Monotone by score only, so the panel shares no quasi-order mode.
        score_only = LossFunction(
            PFN(0.2, 0.6), PFN(0.5, 0.3), PFN(0.8, 0.6), PFN(0.7, 0.1), PFN(0.8, 0.4), PFN(0.7, 0.1)
        )
        panel = LossPanel.uniform((loss, score_only))
        assert panel.modes == frozenset({LossMode.SCORE})
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            assert panel.check_rule(Rule.SCORE)
            assert not caught
            assert not panel.check_rule(Rule.PFN_ORDER)
            assert not panel.check_rule("closeness")
        assert len(caught) == 2
        assert "quasi_order" in str(caught[0].message)


class TestGroupExpectedLoss:
    @pytest.mark.parametrize("p,action", sorted(ORACLE_GL))
    def test_oracle_values(self, panel, p, action):
        g = group_expected_loss(p, panel, action)
        assert (g.mu, g.nu) == pytest.approx(ORACLE_GL[p, action], abs=1e-12)

    def test_published_spot_values(self, panel):
        g = group_expected_loss(0.8368, panel, "P")
        assert (g.mu, g.nu) == pytest.approx((0.4623, 0.6731), abs=2e-3)
        g = group_expected_loss(0.2727, panel, "N")
        assert (g.mu, g.nu) == pytest.approx((0.5186, 0.5679), abs=2e-3)

    @given(st.floats(0, 1), quasi_monotone_losses(), st.sampled_from(list(Action)))
    def test_single_expert_reduces(self, p, l, action):
        a = group_expected_loss(p, LossPanel((l,), (1.0,)), action)
        b = expected_loss(p, l, action)
        assert abs(a.mu - b.mu) <= 1e-15 and abs(a.nu - b.nu) <= 1e-15

    @given(
        st.floats(0, 1),
        st.integers(1, 4).flatmap(lambda m: st.tuples(st.lists(quasi_monotone_losses(), min_size=m, max_size=m), weight_vectors(m))),
        st.sampled_from(list(Action)),
    )
    def test_matches_independent_mean(self, p, panel_args, action):
        losses, ks = panel_args
        g = group_expected_loss(p, LossPanel(tuple(losses), tuple(ks)), action)
        parts = [expected_loss(p, l, action) for l in losses]
        mu = sum(k * e.mu for k, e in zip(ks, parts))
        nu = sum(k * e.nu for k, e in zip(ks, parts))
        assert g.mu == pytest.approx(mu, abs=1e-12)
        assert g.nu == pytest.approx(nu, abs=1e-12)

    @given(
        st.floats(0, 1),
        st.lists(quasi_monotone_losses(), min_size=3, max_size=3),
        weight_vectors(3),
        st.permutations(range(3)),
    )
    def test_expert_permutation_invariance(self, p, losses, ks, perm):
        a = LossPanel(tuple(losses), tuple(ks))
        b = LossPanel(tuple(losses[i] for i in perm), tuple(ks[i] for i in perm))
        for action in Action:
            x, y = group_expected_loss(p, a, action), group_expected_loss(p, b, action)
            assert x.mu == pytest.approx(y.mu, abs=1e-12)
            assert x.nu == pytest.approx(y.nu, abs=1e-12)


class TestGroupMatrices:
    def test_first_rows(self, table, panel):
        gm = group_matrices(table, panel)
        assert tuple(gm.score[0][1:]) == pytest.approx((-0.2393, -0.0583, 0.5176), abs=2e-3)
        assert tuple(gm.closeness[0][1:]) == pytest.approx((0.4103, 0.4785, 0.6907), abs=2e-3)

    def test_entrywise_score_and_closeness(self, table, panel):
        gm = group_matrices(table, panel)
        for r, sr, cr in zip(gm.pfn, gm.score, gm.closeness):
            assert tuple(sr[1:]) == tuple(score(g) for g in r.losses)
            assert tuple(cr[1:]) == tuple(closeness(g) for g in r.losses)

    def test_identical_experts(self, table, loss):
        gm = group_matrices(table, LossPanel.uniform((loss, loss, loss)))
        single = expected_loss_matrix(table, loss)
        for a, b in zip(gm.pfn, single):
            for x, y in zip(a.losses, b.losses):
                assert (x.mu, x.nu) == pytest.approx((y.mu, y.nu), abs=1e-15)

    def test_zero_weight_expert_is_ignored(self, table, loss, panel):
        with_zero = LossPanel((loss, panel.losses[1]), (1.0, 0.0))
        gm = group_matrices(table, with_zero)
        assert gm.pfn == expected_loss_matrix(table, loss)

    @given(systems(max_agents=3, max_issues=3), quasi_monotone_losses())
    def test_single_expert_matrices(self, s, l):
        gm = group_matrices(s, LossPanel((l,), (1.0,)))
        single = expected_loss_matrix(s, l)
        assert gm.pfn == single
        assert gm.score == score_rows(single)
        assert gm.closeness == closeness_rows(single)


def _regions(rows, rule):
    p = to_partition([classify_group(r, rule) for r in rows], rule)
    return p.positive, p.central, p.negative, p.unclassified


class TestGroupClassification:
    def test_quasi_order(self, table, panel):
        rows = group_matrices(table, panel).pfn
        assert _regions(rows, Rule.PFN_ORDER) == (("x1",), ("x2", "x4", "x5", "x6"), (), ("x3",))

    @pytest.mark.parametrize("rule", [Rule.SCORE, Rule.CLOSENESS])
    def test_total_rules(self, table, panel, rule):
        rows = group_matrices(table, panel).pfn
        assert _regions(rows, rule) == (("x1",), ("x2", "x4", "x5", "x6"), ("x3",), ())

    def test_same_as_single_expert_classifier(self, table, panel):
        for row in group_matrices(table, panel).pfn:
            for rule in Rule:
                assert classify_group(row, rule) == classify(row, rule)
