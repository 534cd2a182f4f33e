import numpy as np
import pytest

from liqdem import (
    DelegationFunction,
    SocialNetwork,
    StrategyParams,
    best_guru,
    cap_value,
    delegation_score,
    direct_democracy,
    emerging_delegation,
    exhaustive_optimum,
    greedy_cap,
    greedy_delegation,
    greedy_strategy,
    guru_profile,
    local_search_strategy,
    validate_delegation,
    voronoi_delegation,
)
from helpers import example_net, random_net, strongly_connected_net


def test_direct_democracy_identity():
    net = example_net()
    assert direct_democracy(net) == DelegationFunction.identity(7)
    single = SocialNetwork(1, (), (0.7,))
    assert delegation_score(single, direct_democracy(single)) == pytest.approx(0.7)


def test_best_guru_on_cycle():
    net = SocialNetwork(3, ((0, 1), (1, 2), (2, 0)), (0.4, 0.3, 0.3))
    d = best_guru(net)
    assert d.choice == (0, 2, 0)
    assert delegation_score(net, d) == pytest.approx(0.4, abs=1e-12)


def test_best_guru_without_arcs():
    net = SocialNetwork(4, (), (0.3, 0.9, 0.5, 0.2))
    assert best_guru(net) == DelegationFunction.identity(4)


def test_best_guru_unreachable_voters_keep_ballot():
    net = SocialNetwork(4, ((0, 1),), (0.2, 0.9, 0.4, 0.3))
    d = best_guru(net)
    assert d.choice == (1, 1, 2, 3)


def test_best_guru_ties_go_to_lowest_index():
    net = SocialNetwork(3, ((1, 0), (1, 2)), (0.8, 0.5, 0.8))
    d = best_guru(net)
    assert d.choice == (0, 0, 2)


def test_greedy_assigner_path():
    net = SocialNetwork(3, ((0, 1), (1, 2)), (0.4, 0.4, 0.8))
    d = greedy_delegation(net, {2})
    assert d.choice == (1, 2, 2)


def test_greedy_assigner_all_gurus():
    net = example_net()
    assert greedy_delegation(net, range(7)) == DelegationFunction.identity(7)


def test_greedy_assigner_example():
    # guru order by accuracy is 3, 0, 6; voter 3 can reach everyone first
    d = greedy_delegation(example_net(), {0, 3, 6})
    assert d.choice == (0, 2, 3, 3, 5, 1, 6)


def test_greedy_assigner_respects_earlier_captures():
    # two gurus on a path: the better one grabs the middle voter, the other
    # keeps only what is left
    net = SocialNetwork(4, ((1, 0), (1, 2), (2, 1), (2, 3)), (0.9, 0.5, 0.5, 0.8))
    d = greedy_delegation(net, {0, 3})
    assert d.choice == (0, 0, 1, 3)


def test_voronoi_two_gurus_cost_tradeoff():
    net = SocialNetwork(
        6,
        ((0, 1), (1, 2), (0, 4), (4, 5), (3, 5), (3, 1)),
        (0.5, 0.5, 0.9, 0.5, 0.5, 0.6),
    )
    d = voronoi_delegation(net, {2, 5})
    assert d.choice == (1, 2, 2, 5, 5, 5)


def test_voronoi_equidistant_prefers_accuracy():
    net = SocialNetwork(
        5, ((0, 1), (1, 3), (0, 2), (2, 4)), (0.5, 0.5, 0.5, 0.8, 0.6)
    )
    d = voronoi_delegation(net, {3, 4})
    assert d.choice[0] == 1  # two hops either way, 0.8 beats 0.6
    assert d.choice == (1, 3, 4, 3, 4)


def test_voronoi_matches_cost_table_on_random_nets():
    rng = np.random.default_rng(14)
    for _ in range(30):
        n = int(rng.integers(4, 12))
        net = random_net(rng, n)
        k = int(rng.integers(1, max(2, n // 2)))
        gurus = sorted({int(v) for v in rng.choice(n, size=k, replace=False)})
        d = voronoi_delegation(net, gurus)
        assert validate_delegation(net, d).ok
        for v in range(n):
            costs = {
                g: net.hops_to(g)[v] / net.accuracies[g] if net.accuracies[g] else float("inf")
                for g in gurus
            }
            best = min(costs.values(), default=float("inf"))
            if v in gurus:
                assert d.choice[v] == v
            elif best == float("inf"):
                assert d.choice[v] == v
            else:
                # the chosen next hop must sit one hop closer to some
                # cheapest guru of maximal accuracy
                winners = [g for g in gurus if costs[g] == best]
                winner = max(winners, key=lambda g: (net.accuracies[g], -g))
                u = d.choice[v]
                assert net.hops_to(winner)[u] == net.hops_to(winner)[v] - 1


def test_voronoi_single_guru_equals_greedy():
    rng = np.random.default_rng(20)
    for _ in range(20):
        net = random_net(rng, int(rng.integers(3, 10)))
        g = max(range(net.n), key=lambda v: net.accuracies[v])
        assert voronoi_delegation(net, {g}) == greedy_delegation(net, {g})


def test_greedy_strategy_stops_on_flat_landscape():
    net = SocialNetwork(5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)), (0.5,) * 5)
    for assigner in ("greedy", "voronoi"):
        assert greedy_strategy(net, assigner) == DelegationFunction.identity(5)


def test_greedy_strategy_beats_direct_on_example():
    net = example_net()
    direct = delegation_score(net, direct_democracy(net))
    for assigner in ("greedy", "voronoi"):
        assert delegation_score(net, greedy_strategy(net, assigner)) >= direct


def test_greedy_strategy_bounded_by_optimum():
    rng = np.random.default_rng(33)
    for _ in range(10):
        net = random_net(rng, int(rng.integers(3, 8)), None)
        _, opt = exhaustive_optimum(net)
        for assigner in ("greedy", "voronoi"):
            s = delegation_score(net, greedy_strategy(net, assigner))
            assert s <= opt + 1e-12


def test_local_search_zero_iterations_returns_start():
    rng = np.random.default_rng(40)
    for _ in range(5):
        net = random_net(rng, 5, 8)
        start, opt = exhaustive_optimum(net)
        result = local_search_strategy(net, "greedy", start)
        assert result is start  # no move can beat the optimum


def test_local_search_never_loses_ground():
    rng = np.random.default_rng(41)
    for _ in range(15):
        net = random_net(rng, int(rng.integers(4, 12)))
        for assigner in ("greedy", "voronoi"):
            result = local_search_strategy(net, assigner)
            assert validate_delegation(net, result).ok
            start_score = delegation_score(net, direct_democracy(net))
            assert delegation_score(net, result) >= start_score - 1e-12


def test_local_search_bounded_by_optimum():
    rng = np.random.default_rng(42)
    for _ in range(10):
        net = random_net(rng, int(rng.integers(3, 8)))
        _, opt = exhaustive_optimum(net)
        for assigner in ("greedy", "voronoi"):
            s = delegation_score(net, local_search_strategy(net, assigner))
            assert s <= opt + 1e-12


def test_local_search_rejects_invalid_start():
    net = SocialNetwork(2, ((0, 1), (1, 0)), (0.5, 0.5))
    with pytest.raises(ValueError, match="invalid start"):
        local_search_strategy(net, "greedy", DelegationFunction((1, 0)))


def test_unknown_assigner_rejected():
    with pytest.raises(ValueError, match="unknown assigner"):
        greedy_strategy(example_net(), "fancy")


def test_cap_value():
    assert cap_value(11) == 14
    assert cap_value(30) == 16
    assert cap_value(201) == 18


def test_greedy_cap_no_approvals_under_equal_accuracy():
    net = SocialNetwork(5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)), (0.6,) * 5)
    assert greedy_cap(net) == DelegationFunction.identity(5)


def test_greedy_cap_chain_all_join_top():
    net = SocialNetwork(4, ((0, 1), (1, 2), (2, 3)), (0.2, 0.4, 0.6, 0.8))
    d = greedy_cap(net)
    assert d.choice == (1, 2, 3, 3)
    assert guru_profile(net, d).entries == ((3, 4),)


def test_greedy_cap_star_saturates_at_cap():
    n = 30
    arcs = tuple((leaf, 0) for leaf in range(1, n))
    net = SocialNetwork(n, arcs, (0.9,) + (0.3,) * (n - 1))
    d = greedy_cap(net)
    prof = dict(guru_profile(net, d).entries)
    assert prof[0] == cap_value(n) == 16
    # leaves join in index order until the tree is full
    assert all(d.choice[leaf] == 0 for leaf in range(1, 16))
    assert all(d.choice[leaf] == leaf for leaf in range(16, n))


def test_greedy_cap_alpha_blocks_small_improvements():
    net = SocialNetwork(2, ((0, 1),), (0.5, 0.6))
    assert greedy_cap(net).choice == (1, 1)
    strict = greedy_cap(net, StrategyParams(alpha=0.2))
    assert strict.choice == (0, 1)


def test_emerging_identity_under_equal_accuracy():
    net = SocialNetwork(4, ((0, 1), (1, 2), (2, 3), (3, 0)), (0.5,) * 4)
    rng = np.random.default_rng(0)
    for _ in range(10):
        assert emerging_delegation(net, rng) == DelegationFunction.identity(4)


def test_emerging_choice_frequencies():
    net = SocialNetwork(3, ((0, 1), (0, 2)), (0.2, 0.3, 0.8))
    rng = np.random.default_rng(55)
    trials = 20_000
    counts = {0: 0, 1: 0, 2: 0}
    for _ in range(trials):
        d = emerging_delegation(net, rng)
        counts[d.choice[0]] += 1
        assert d.choice[1] == 1 and d.choice[2] == 2
    for target, p in ((0, 0.2 / 1.3), (1, 0.3 / 1.3), (2, 0.8 / 1.3)):
        sigma = (p * (1 - p) / trials) ** 0.5
        assert abs(counts[target] / trials - p) < 4 * sigma


def test_all_strategies_return_valid_delegations():
    rng = np.random.default_rng(77)
    params = StrategyParams()
    for _ in range(25):
        n = int(rng.integers(2, 16))
        net = random_net(rng, n)
        outputs = [
            direct_democracy(net),
            best_guru(net),
            greedy_cap(net, params),
            emerging_delegation(net, rng),
            greedy_strategy(net, "greedy", params),
            greedy_strategy(net, "voronoi", params),
            local_search_strategy(net, "greedy", None, params),
            local_search_strategy(net, "voronoi", None, params),
        ]
        k = int(rng.integers(1, n + 1))
        gurus = {int(v) for v in rng.choice(n, size=k, replace=False)}
        outputs.append(greedy_delegation(net, gurus))
        outputs.append(voronoi_delegation(net, gurus))
        for d in outputs:
            report = validate_delegation(net, d)
            assert report.ok, report.reason


def test_best_guru_optimal_for_weak_voters():
    # strongly connected and nobody above 1/2: a single best guru is optimal
    rng = np.random.default_rng(90)
    for _ in range(15):
        n = int(rng.choice([3, 5]))
        net = strongly_connected_net(rng, n, extra_arcs=int(rng.integers(0, n)), p_max=0.5)
        d = best_guru(net)
        _, opt = exhaustive_optimum(net)
        assert delegation_score(net, d) == pytest.approx(opt, abs=1e-10)
