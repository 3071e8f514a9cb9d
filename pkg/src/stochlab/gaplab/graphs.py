"""Weighted graphs, subset rate systems, and the text network format.

The file format, one record per line ('#' starts a comment):

    n <vertex count>
    e <i> <j> <weight>            0-based endpoints, i < j, weight >= 0
    h <k> <v1> ... <vk> <rate>    subset of k >= 2 distinct vertices

Duplicate edge or subset records are summed.  Parse errors carry the line
and column of the offending token.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


class CapacityError(ValueError):
    """The requested state space exceeds the supported size."""


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric nonnegative edge conductances with zero diagonal."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        if not np.array_equal(w, w.T):
            raise ValueError("weights must be symmetric")
        if np.any(np.diag(w) != 0):
            raise ValueError("diagonal weights must be zero")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def edges(self):
        """Positive-weight edges as (i, j, weight) with i < j."""
        w = self.weights
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if w[i, j] > 0:
                    yield i, j, w[i, j]

    def strength(self, i: int) -> float:
        return float(self.weights[i].sum())

    @property
    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in np.nonzero(self.weights[v] > 0)[0]:
                if int(u) not in seen:
                    seen.add(int(u))
                    stack.append(int(u))
        return len(seen) == self.n

    @classmethod
    def from_edges(cls, n: int, edges) -> "WeightedGraph":
        w = np.zeros((n, n))
        for i, j, weight in edges:
            w[i, j] += weight
            w[j, i] += weight
        return cls(w)


@dataclass(frozen=True)
class HyperWeights:
    """Nonnegative shuffle rates indexed by vertex subsets of size >= 2."""

    n: int
    rates: dict[frozenset[int], float] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for subset, rate in self.rates.items():
            subset = frozenset(subset)
            if len(subset) < 2:
                raise ValueError(f"rated subsets need >= 2 vertices, got {sorted(subset)}")
            if not all(0 <= v < self.n for v in subset):
                raise ValueError(f"subset {sorted(subset)} outside 0..{self.n - 1}")
            if rate < 0:
                raise ValueError(f"rate for {sorted(subset)} is negative")
            cleaned[subset] = cleaned.get(subset, 0.0) + float(rate)
        object.__setattr__(self, "rates", cleaned)


@dataclass(frozen=True)
class Network:
    """Parsed contents of a network file."""

    graph: WeightedGraph
    hyper: HyperWeights


# --- standard small graphs --------------------------------------------------

def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1, weight) for i in range(n - 1)])


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = [(i, i + 1, weight) for i in range(n - 1)] + [(0, n - 1, weight)]
    return WeightedGraph.from_edges(n, edges)


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph.from_edges(
        n, [(i, j, weight) for i in range(n) for j in range(i + 1, n)]
    )


def star_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    """Hub vertex 0 joined to every other vertex."""
    return WeightedGraph.from_edges(n, [(0, j, weight) for j in range(1, n)])


def single_edge(weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph.from_edges(2, [(0, 1, weight)])


# --- fuzzing and enumeration ------------------------------------------------

def random_connected_graph(n: int, rng: np.random.Generator,
                           edge_prob: float = 0.5) -> WeightedGraph:
    """Erdos-Renyi skeleton conditioned on connectivity, weights in (0, 1]."""
    while True:
        w = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < edge_prob:
                    weight = 1.0 - rng.random()  # uniform on (0, 1]
                    w[i, j] = w[j, i] = weight
        g = WeightedGraph(w)
        if g.is_connected:
            return g


def random_hyperweights(n: int, rng: np.random.Generator,
                        max_subsets: int = 4) -> HyperWeights:
    """Random rated subsets whose single-particle graph is connected."""
    from .generators import alpha_single_particle_rates

    while True:
        count = int(rng.integers(1, max_subsets + 1))
        rates: dict[frozenset[int], float] = {}
        for _ in range(count):
            size = int(rng.integers(2, n + 1))
            subset = frozenset(int(v) for v in rng.choice(n, size=size, replace=False))
            rates[subset] = rates.get(subset, 0.0) + (1.0 - rng.random())
        hyper = HyperWeights(n, rates)
        if alpha_single_particle_rates(hyper).is_connected:
            return hyper


def connected_graph_representatives(n: int) -> list[WeightedGraph]:
    """One unit-weight representative per isomorphism class of connected
    graphs on n vertices (brute-force canonical forms)."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        g = WeightedGraph.from_edges(n, [(i, j, 1.0) for i, j in edges])
        if not g.is_connected:
            continue
        canon = min(
            tuple(
                1 if g.weights[p[i], p[j]] > 0 else 0
                for i, j in pairs
            )
            for p in perms
        )
        if canon not in seen:
            seen.add(canon)
            out.append(g)
    return out


# --- text format ------------------------------------------------------------

def parse_network(text: str) -> Network:
    n = None
    edges: list[tuple[int, int, float]] = []
    rates: dict[frozenset[int], float] = {}

    def err(lineno, line, token, message):
        column = line.find(token) + 1 if token and token in line else 1
        raise GraphFormatError(message, lineno, column)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "n":
            if n is not None:
                err(lineno, raw, tag, "duplicate 'n' record")
            if len(tokens) != 2:
                err(lineno, raw, tag, "'n' record needs exactly one count")
            try:
                n = int(tokens[1])
            except ValueError:
                err(lineno, raw, tokens[1], f"bad vertex count {tokens[1]!r}")
            if n < 1:
                err(lineno, raw, tokens[1], "vertex count must be >= 1")
        elif tag == "e":
            if n is None:
                err(lineno, raw, tag, "'e' record before 'n'")
            if len(tokens) != 4:
                err(lineno, raw, tag, "'e' record needs: e <i> <j> <weight>")
            try:
                i, j = int(tokens[1]), int(tokens[2])
            except ValueError:
                err(lineno, raw, tokens[1], "endpoints must be integers")
            if not (0 <= i < n and 0 <= j < n):
                err(lineno, raw, tokens[1], f"endpoint outside 0..{n - 1}")
            if i >= j:
                err(lineno, raw, tokens[1], f"edges require i < j, got {i} >= {j}")
            try:
                weight = float(tokens[3])
            except ValueError:
                err(lineno, raw, tokens[3], f"bad weight {tokens[3]!r}")
            if weight < 0:
                err(lineno, raw, tokens[3], "weight must be nonnegative")
            edges.append((i, j, weight))
        elif tag == "h":
            if n is None:
                err(lineno, raw, tag, "'h' record before 'n'")
            if len(tokens) < 2:
                err(lineno, raw, tag, "'h' record needs: h <k> <v1> ... <vk> <rate>")
            try:
                k = int(tokens[1])
            except ValueError:
                err(lineno, raw, tokens[1], f"bad subset size {tokens[1]!r}")
            if k < 2:
                err(lineno, raw, tokens[1], "subset size must be >= 2")
            if len(tokens) != k + 3:
                err(lineno, raw, tag, f"'h' record needs {k} vertices and a rate")
            try:
                verts = [int(t) for t in tokens[2 : 2 + k]]
            except ValueError:
                err(lineno, raw, tokens[2], "vertices must be integers")
            for v in verts:
                if not 0 <= v < n:
                    err(lineno, raw, str(v), f"vertex {v} outside 0..{n - 1}")
            if len(set(verts)) != k:
                err(lineno, raw, tokens[2], "subset vertices must be distinct")
            try:
                rate = float(tokens[2 + k])
            except ValueError:
                err(lineno, raw, tokens[2 + k], f"bad rate {tokens[2 + k]!r}")
            if rate < 0:
                err(lineno, raw, tokens[2 + k], "rate must be nonnegative")
            subset = frozenset(verts)
            rates[subset] = rates.get(subset, 0.0) + rate
        else:
            err(lineno, raw, tag, f"unknown record type {tag!r}")
    if n is None:
        raise GraphFormatError("missing 'n' record", 1)
    return Network(WeightedGraph.from_edges(n, edges), HyperWeights(n, rates))


def parse_graph_file(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def format_network(graph: WeightedGraph, hyper: HyperWeights | None = None) -> str:
    lines = [f"n {graph.n}"]
    for i, j, w in graph.edges():
        lines.append(f"e {i} {j} {float(w)!r}")
    if hyper is not None:
        for subset in sorted(hyper.rates, key=sorted):
            verts = " ".join(str(v) for v in sorted(subset))
            lines.append(f"h {len(subset)} {verts} {float(hyper.rates[subset])!r}")
    return "\n".join(lines) + "\n"
