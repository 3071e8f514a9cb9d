import math

import pytest

from stochlab.gaplab import WeightedGraph, complete_graph, cycle_graph, path_graph
from stochlab.ipslab import (
    UniformBuffer,
    VoterConfig,
    coalescing_walk_survivors,
    consensus_rate,
    duality_check,
    simulate_voter,
    trial_generator,
)


class TestVoterConfig:
    def test_disconnected_rejected(self):
        g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
        with pytest.raises(ValueError):
            VoterConfig(g, rho=0.5)

    def test_opinion_length_checked(self):
        with pytest.raises(ValueError):
            VoterConfig(cycle_graph(4), opinions=(1, 0))

    def test_binary_opinions_required(self):
        with pytest.raises(ValueError):
            VoterConfig(cycle_graph(3), opinions=(1, 0, 2))

    def test_need_init(self):
        with pytest.raises(ValueError):
            VoterConfig(cycle_graph(3))

    def test_rho_range(self):
        with pytest.raises(ValueError):
            VoterConfig(cycle_graph(3), rho=1.5)


class TestSimulateVoter:
    def test_unanimous_start_is_consensus_at_zero(self):
        cfg = VoterConfig(cycle_graph(6), opinions=(1,) * 6)
        out = simulate_voter(cfg, 10.0, seed=4)
        assert out.consensus_time == 0.0
        assert out.consensus_value == 1
        assert out.final_opinions == (1,) * 6
        assert out.n_events == 0

    def test_absorbing_all_zero(self):
        cfg = VoterConfig(path_graph(4), opinions=(0,) * 4)
        out = simulate_voter(cfg, 5.0, seed=1)
        assert out.consensus_time == 0.0
        assert out.consensus_value == 0

    def test_deterministic(self):
        cfg = VoterConfig(cycle_graph(8), rho=0.5)
        a = simulate_voter(cfg, 20.0, seed=12, record_dt=1.0)
        b = simulate_voter(cfg, 20.0, seed=12, record_dt=1.0)
        assert a == b

    def test_consensus_value_matches_final(self):
        cfg = VoterConfig(complete_graph(5), rho=0.4)
        out = simulate_voter(cfg, 500.0, seed=3)
        if out.consensus_time is not None:
            assert set(out.final_opinions) == {out.consensus_value}

    def test_ones_fraction_martingale(self):
        # regular graph, fixed half-ones start: the mean fraction at t=5
        # stays at 1/2 up to Monte Carlo error
        start = tuple(i % 2 for i in range(20))
        cfg = VoterConfig(cycle_graph(20), opinions=start)
        trials = 4000
        values = []
        for t in range(trials):
            out = simulate_voter(cfg, 5.0, seed=50_000 + t)
            values.append(out.final_opinions.count(1) / 20)
        mean = sum(values) / trials
        var = sum((v - mean) ** 2 for v in values) / (trials - 1)
        stderr = math.sqrt(var / trials)
        assert abs(mean - 0.5) <= 3 * stderr


class TestConsensusRate:
    def test_cycle_consensus_is_near_certain(self):
        cfg = VoterConfig(cycle_graph(20), rho=0.5)
        est = consensus_rate(cfg, 1e4, 300, seed=3)
        assert est.rate >= 0.99
        assert est.mean_time and est.mean_time > 0

    def test_deterministic(self):
        cfg = VoterConfig(cycle_graph(10), rho=0.5)
        assert consensus_rate(cfg, 100.0, 50, seed=2) == consensus_rate(cfg, 100.0, 50, seed=2)


class TestCoalescingWalkers:
    def test_no_time_no_merging(self):
        rng = UniformBuffer(trial_generator(1, 9))
        assert coalescing_walk_survivors(cycle_graph(10), (0, 3, 7), 0.0, rng) == 3

    def test_eventually_one_walker(self):
        g = complete_graph(4)
        merged_to_one = 0
        for t in range(200):
            rng = UniformBuffer(trial_generator(11, 9, t))
            if coalescing_walk_survivors(g, (0, 1, 2, 3), 200.0, rng) == 1:
                merged_to_one += 1
        assert merged_to_one >= 195  # long horizon: everyone meets


class TestDuality:
    def test_time_zero_is_exact_in_expectation(self):
        rep = duality_check(cycle_graph(8), (0, 1), t=0.0, rho=0.5, trials=4000, seed=6)
        assert rep.rhs == 0.25  # walkers never move: rho^2 every trial
        assert rep.rhs_stderr == 0.0
        assert abs(rep.z_score) <= 4

    def test_single_site_marginal_is_stationary(self):
        rep = duality_check(cycle_graph(9), (4,), t=3.0, rho=0.3, trials=4000, seed=8)
        assert rep.rhs == pytest.approx(0.3)  # one walker survives always
        assert abs(rep.z_score) <= 4

    def test_adjacent_pair_on_cycle(self):
        rep = duality_check(cycle_graph(10), (0, 1), t=2.0, rho=0.5, trials=20_000, seed=5)
        assert abs(rep.z_score) <= 4

    def test_deterministic(self):
        a = duality_check(cycle_graph(6), (0, 2), t=1.0, rho=0.5, trials=500, seed=4)
        b = duality_check(cycle_graph(6), (0, 2), t=1.0, rho=0.5, trials=500, seed=4)
        assert a == b

    def test_validation(self):
        with pytest.raises(ValueError):
            duality_check(cycle_graph(5), (), 1.0, 0.5, 10, seed=0)
        with pytest.raises(ValueError):
            duality_check(cycle_graph(5), (9,), 1.0, 0.5, 10, seed=0)
        with pytest.raises(ValueError):
            duality_check(cycle_graph(5), (0,), 1.0, 1.5, 10, seed=0)
        disconnected = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
        with pytest.raises(ValueError):
            duality_check(disconnected, (0,), 1.0, 0.5, 10, seed=0)
