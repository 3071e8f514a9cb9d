"""Voter model on a finite graph and its coalescing-walk counterpart.

Every vertex wakes at rate one and copies the opinion of a uniformly
chosen neighbor.  Unanimity is absorbing, so runs stop at consensus.  The
dual system runs rate-one walkers that jump to uniform neighbors and merge
on meeting; the two are tied together by the two-sided Monte Carlo check
in ``duality_check``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..gaplab.graphs import WeightedGraph
from .rng import UniformBuffer, trial_generator
from .stats import TrialStats


def adjacency_lists(graph: WeightedGraph) -> list[list[int]]:
    adj = [[] for _ in range(graph.n)]
    for i, j, _ in graph.edges():
        adj[i].append(j)
        adj[j].append(i)
    return adj


@dataclass(frozen=True)
class VoterConfig:
    graph: WeightedGraph
    rho: float | None = None                 # product initial law
    opinions: tuple[int, ...] | None = None  # explicit initial opinions

    def __post_init__(self):
        if not self.graph.is_connected:
            raise ValueError("voter model requires a connected graph")
        if self.opinions is not None:
            if len(self.opinions) != self.graph.n:
                raise ValueError("one opinion per vertex required")
            if any(o not in (0, 1) for o in self.opinions):
                raise ValueError("opinions must be 0 or 1")
        elif self.rho is None:
            raise ValueError("provide either opinions or a density rho")
        if self.rho is not None and not 0 <= self.rho <= 1:
            raise ValueError("rho must lie in [0, 1]")


@dataclass(frozen=True)
class VoterTrajectory:
    consensus_time: float | None
    consensus_value: int | None
    final_opinions: tuple[int, ...]
    ones_path: tuple[tuple[float, float], ...]  # (t, fraction of ones)
    n_events: int


def _initial_opinions(cfg: VoterConfig, rng: UniformBuffer) -> list[int]:
    if cfg.opinions is not None:
        return list(cfg.opinions)
    return [1 if rng.next() < cfg.rho else 0 for _ in range(cfg.graph.n)]


def simulate_voter(cfg: VoterConfig, t_max: float, seed: int,
                   record_dt: float | None = None) -> VoterTrajectory:
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    rng = UniformBuffer(trial_generator(seed, 0))
    return _run_voter(cfg, t_max, rng, record_dt)


def _run_voter(cfg: VoterConfig, t_max: float, rng: UniformBuffer,
               record_dt: float | None = None) -> VoterTrajectory:
    adj = adjacency_lists(cfg.graph)
    n = cfg.graph.n
    opinions = _initial_opinions(cfg, rng)
    ones = sum(opinions)
    path = [(0.0, ones / n)]
    next_record = record_dt if record_dt else math.inf

    t = 0.0
    events = 0
    consensus_time = None
    while True:
        if ones == 0 or ones == n:
            consensus_time = t
            break
        t_next = t + rng.exponential(n)
        while next_record <= min(t_next, t_max):
            path.append((next_record, ones / n))
            next_record += record_dt
        if t_next > t_max:
            t = t_max
            break
        t = t_next
        events += 1
        v = rng.below(n)
        u = adj[v][rng.below(len(adj[v]))]
        if opinions[v] != opinions[u]:
            ones += opinions[u] - opinions[v]
            opinions[v] = opinions[u]

    path.append((t, ones / n))
    return VoterTrajectory(
        consensus_time=consensus_time,
        consensus_value=(opinions[0] if consensus_time is not None else None),
        final_opinions=tuple(opinions),
        ones_path=tuple(path),
        n_events=events,
    )


@dataclass(frozen=True)
class ConsensusEstimate:
    rate: float
    mean_time: float | None
    stats: TrialStats

    def to_dict(self) -> dict:
        return {
            "consensusRate": self.rate,
            "meanConsensusTime": self.mean_time,
            **self.stats.to_dict(),
        }


def consensus_rate(cfg: VoterConfig, t_max: float, trials: int, seed: int) -> ConsensusEstimate:
    """Fraction of trials reaching unanimity by t_max."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    times = []
    reached = 0
    for trial in range(trials):
        rng = UniformBuffer(trial_generator(seed, 2, trial))
        out = _run_voter(cfg, t_max, rng)
        if out.consensus_time is not None:
            reached += 1
            times.append(out.consensus_time)
    stats = TrialStats(
        trials=trials, survivals=reached, consensus_times=tuple(times),
        master_seed=seed, lane="voter/2",
    )
    mean_time = sum(times) / len(times) if times else None
    return ConsensusEstimate(reached / trials, mean_time, stats)


def coalescing_walk_survivors(graph: WeightedGraph, start, t_max: float,
                              rng: UniformBuffer) -> int:
    """Number of distinct walkers left at t_max, merging on meeting."""
    adj = adjacency_lists(graph)
    positions = sorted(set(start))
    occupied_by: dict[int, int] = {x: i for i, x in enumerate(positions)}
    alive = set(range(len(positions)))
    where = dict(enumerate(positions))

    t = 0.0
    while len(alive) > 1:
        t_next = t + rng.exponential(len(alive))
        if t_next > t_max:
            break
        t = t_next
        walker = sorted(alive)[rng.below(len(alive))]
        old = where[walker]
        new = adj[old][rng.below(len(adj[old]))]
        del occupied_by[old]
        if new in occupied_by:
            alive.remove(walker)  # merged into the sitting walker
            del where[walker]
        else:
            occupied_by[new] = walker
            where[walker] = new
    return len(alive)


@dataclass(frozen=True)
class DualityReport:
    lhs: float
    rhs: float
    z_score: float
    lhs_stderr: float
    rhs_stderr: float
    trials: int
    target: tuple[int, ...]
    t: float
    rho: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "zScore": self.z_score,
            "lhsStderr": self.lhs_stderr,
            "rhsStderr": self.rhs_stderr,
            "trials": self.trials,
            "target": list(self.target),
            "t": self.t,
            "rho": self.rho,
            "seed": self.seed,
        }


def _duality_lhs_chunk(packed):
    graph, target, t, rho, seed, lo, hi = packed
    cfg = VoterConfig(graph, rho=rho)
    count = 0
    for trial in range(lo, hi):
        rng = UniformBuffer(trial_generator(seed, 3, trial))
        out = _run_voter(cfg, t, rng)
        count += all(out.final_opinions[v] == 1 for v in target)
    return count


def _duality_rhs_chunk(packed):
    graph, target, t, rho, seed, lo, hi = packed
    values = []
    for trial in range(lo, hi):
        rng = UniformBuffer(trial_generator(seed, 4, trial))
        values.append(rho ** coalescing_walk_survivors(graph, target, t, rng))
    return values


def duality_check(graph: WeightedGraph, target, t: float, rho: float,
                  trials: int, seed: int, workers: int = 1) -> DualityReport:
    """Monte Carlo of both sides of the consensus-probability identity.

    Left side: probability that every vertex of ``target`` holds opinion 1
    at time t when opinions start i.i.d. with density rho.  Right side:
    the mean of rho raised to the number of surviving coalescing walkers
    started on ``target`` and run for time t.  Reports a two-sample z.

    With workers > 1 the trials run in separate processes; the reduction
    replays per-trial values in trial order, so the report is identical to
    the single-process run.
    """
    target = tuple(sorted(set(target)))
    if not target:
        raise ValueError("target set cannot be empty")
    if any(not 0 <= v < graph.n for v in target):
        raise ValueError("target vertices outside the graph")
    if not 0 <= rho <= 1:
        raise ValueError("rho must lie in [0, 1]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not graph.is_connected:
        raise ValueError("duality check requires a connected graph")

    from .contact import _chunk_ranges

    jobs = [(graph, target, t, rho, seed, lo, hi)
            for lo, hi in _chunk_ranges(trials, max(1, workers))]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            lhs_counts = list(pool.map(_duality_lhs_chunk, jobs))
            rhs_chunks = list(pool.map(_duality_rhs_chunk, jobs))
    else:
        lhs_counts = [_duality_lhs_chunk(job) for job in jobs]
        rhs_chunks = [_duality_rhs_chunk(job) for job in jobs]
    lhs = sum(lhs_counts) / trials
    lhs_var = lhs * (1 - lhs) / trials

    rhs_sum = 0.0
    rhs_sq = 0.0
    for values in rhs_chunks:
        for value in values:
            rhs_sum += value
            rhs_sq += value * value
    rhs = rhs_sum / trials
    rhs_var = max(0.0, rhs_sq / trials - rhs * rhs) / trials

    spread = math.sqrt(lhs_var + rhs_var)
    if spread == 0:
        z = 0.0 if lhs == rhs else math.inf
    else:
        z = (lhs - rhs) / spread
    return DualityReport(lhs, rhs, z, math.sqrt(lhs_var), math.sqrt(rhs_var),
                         trials, target, t, rho, seed)
