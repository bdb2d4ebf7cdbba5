"""Exact network-coding capacity: minimum cut via blocking-flow max-flow.

The flow network is strictly layered: source(s) -> relays, relay -> relay,
relay -> one destination, plus an optional super-source whose edges are large
enough never to bind. By max-flow/min-cut duality the flow value equals the
minimum cut-capacity sum over all relay partitions.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import NamedTuple

import numpy as np

from .cuts import CutSpec
from .errors import ConfigError
from .sinr import CAPACITY_R0, NetworkInstance, SinrGraph

# Residual capacities at or below this are treated as saturated; flow values
# are exact for the threshold model because its capacities are normalized to
# {0, 1} before solving.
FLOW_TOL = 1e-9


class _Dinic:
    """Blocking-flow max-flow on an adjacency list with residual edges."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list]] = [[] for _ in range(n)]  # [to, residual, reverse-index]

    def add_edge(self, u: int, v: int, cap: float) -> None:
        self.adj[u].append([v, float(cap), len(self.adj[v])])
        self.adj[v].append([u, 0.0, len(self.adj[u]) - 1])

    def _levels(self, s: int, t: int, tol: float) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for edge in self.adj[u]:
                v = edge[0]
                if edge[1] > tol and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment(self, s: int, t: int, level: list[int], it: list[int], tol: float) -> float:
        # One augmenting path in the level graph, iterative to keep the
        # recursion depth independent of the relay count.
        path: list[tuple[int, list]] = []
        v = s
        while True:
            if v == t:
                bottleneck = min(edge[1] for _, edge in path)
                for u, edge in path:
                    edge[1] -= bottleneck
                    self.adj[edge[0]][edge[2]][1] += bottleneck
                return bottleneck
            advanced = False
            while it[v] < len(self.adj[v]):
                edge = self.adj[v][it[v]]
                if edge[1] > tol and level[edge[0]] == level[v] + 1:
                    path.append((v, edge))
                    v = edge[0]
                    advanced = True
                    break
                it[v] += 1
            if not advanced:
                level[v] = -1  # dead end in this phase
                if not path:
                    return 0.0
                v, _ = path.pop()
                it[v] += 1

    def max_flow(self, s: int, t: int, tol: float = FLOW_TOL) -> float:
        flow = 0.0
        while True:
            level = self._levels(s, t, tol)
            if level[t] < 0:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, it, tol)
                if pushed <= 0.0:
                    break
                flow += pushed

    def reachable(self, s: int, tol: float = FLOW_TOL) -> set[int]:
        """Vertices reachable from s in the final residual graph."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for edge in self.adj[u]:
                if edge[1] > tol and edge[0] not in seen:
                    seen.add(edge[0])
                    queue.append(edge[0])
        return seen


@dataclasses.dataclass(frozen=True)
class MinCutResult:
    """A minimum cut: its value, the witnessing sides, and the relay partition.

    value is the sum of capacities crossing from source_side to sink_side;
    flow_value is the independently accumulated max-flow total. The two agree
    exactly for the threshold model and to within float tolerance otherwise.
    source_side/sink_side contain instance node ids (the synthetic
    super-source, when present, is omitted).
    """

    value: float
    flow_value: float
    source_side: frozenset
    sink_side: frozenset
    cut_spec: CutSpec


class CapacityResult(NamedTuple):
    value: float
    destination: int
    min_cut: MinCutResult


@dataclasses.dataclass(frozen=True, eq=False)
class FlowNetwork:
    """Layered flow network for one (sources, destination) query."""

    solver: _Dinic
    node_of_vertex: tuple  # vertex -> instance node id (None for super-source)
    relay_vertices: range
    source_vertex: int
    sink_vertex: int
    scale: float  # capacities were divided by this before solving
    edges: tuple  # (u_vertex, v_vertex, normalized capacity)
    super_edge_capacity: float | None

    @classmethod
    def build(cls, graph: SinrGraph, inst: NetworkInstance, sources, t: int) -> "FlowNetwork":
        sources = [int(s) for s in sources]
        if len(sources) < 1:
            raise ConfigError("need at least one source")
        for s in sources:
            if s not in inst.sources:
                raise ConfigError(f"node {s} is not a source")
        if int(t) not in inst.destinations:
            raise ConfigError(f"node {t} is not a destination")
        # Normalizing by the rate makes threshold-model capacities exact
        # integers in float arithmetic.
        scale = inst.params.rate if graph.capacity_model == CAPACITY_R0 else 1.0
        relays = inst.relays
        m = len(relays)
        multi = len(sources) > 1

        if multi:
            node_of_vertex: list = [None] + sources + [int(r) for r in relays] + [int(t)]
            source_vertices = {s: 1 + i for i, s in enumerate(sources)}
            relay_offset = 1 + len(sources)
        else:
            node_of_vertex = [sources[0]] + [int(r) for r in relays] + [int(t)]
            source_vertices = {sources[0]: 0}
            relay_offset = 1
        sink = len(node_of_vertex) - 1
        relay_vertices = range(relay_offset, relay_offset + m)

        cap = graph.cap
        edges: list[tuple[int, int, float]] = []
        for s, sv in source_vertices.items():
            row = cap[s, relays]
            for pos in np.nonzero(row)[0]:
                edges.append((sv, relay_offset + int(pos), float(row[pos]) / scale))
        block = cap[np.ix_(relays, relays)]
        for i, j in zip(*np.nonzero(block)):
            edges.append((relay_offset + int(i), relay_offset + int(j), float(block[i, j]) / scale))
        col = cap[relays, t]
        for pos in np.nonzero(col)[0]:
            edges.append((relay_offset + int(pos), sink, float(col[pos]) / scale))

        super_edge_capacity = None
        if multi:
            # Large enough never to constrain any cut.
            super_edge_capacity = sum(c for _, _, c in edges) + 1.0

        solver = _Dinic(len(node_of_vertex))
        for u, v, c in edges:
            solver.add_edge(u, v, c)
        if multi:
            for sv in source_vertices.values():
                solver.add_edge(0, sv, super_edge_capacity)
        return cls(
            solver=solver,
            node_of_vertex=tuple(node_of_vertex),
            relay_vertices=relay_vertices,
            source_vertex=0,
            sink_vertex=sink,
            scale=scale,
            edges=tuple(edges),
            super_edge_capacity=super_edge_capacity,
        )

    def solve(self, tol: float = FLOW_TOL) -> MinCutResult:
        flow = self.solver.max_flow(self.source_vertex, self.sink_vertex, tol)
        side = self.solver.reachable(self.source_vertex, tol)
        # Source-side-minimal witness: exactly the residual-reachable set.
        cut_sum = sum(c for u, v, c in self.edges if u in side and v not in side)
        node_side = frozenset(self.node_of_vertex[v] for v in side if self.node_of_vertex[v] is not None)
        all_nodes = frozenset(n for n in self.node_of_vertex if n is not None)
        relay_positions = frozenset(
            pos for pos, v in enumerate(self.relay_vertices) if v in side
        )
        return MinCutResult(
            value=cut_sum * self.scale,
            flow_value=flow * self.scale,
            source_side=node_side,
            sink_side=all_nodes - node_side,
            cut_spec=CutSpec(relay_positions),
        )


def min_cut(graph: SinrGraph, inst: NetworkInstance, s: int, t: int) -> MinCutResult:
    """Exact minimum cut between one source and one destination."""
    return FlowNetwork.build(graph, inst, (s,), t).solve()


def capacity_single_source(graph: SinrGraph, inst: NetworkInstance, s: int | None = None, destinations=None) -> CapacityResult:
    """Single-source capacity: the worst min-cut over the destination set.

    Ties break toward the earliest destination in iteration order.
    """
    s = int(inst.sources[0]) if s is None else int(s)
    dests = list(inst.destinations) if destinations is None else list(destinations)
    if not dests:
        raise ConfigError("need at least one destination")
    best: CapacityResult | None = None
    for t in dests:
        result = min_cut(graph, inst, s, int(t))
        if best is None or result.value < best.value:
            best = CapacityResult(result.value, int(t), result)
    return best


def capacity_multi_source(graph: SinrGraph, inst: NetworkInstance, sources=None, destinations=None) -> CapacityResult:
    """Multi-source capacity via a super-source, minimized over destinations.

    With a single source this reduces to capacity_single_source exactly (the
    super-source is skipped, so even the float arithmetic matches).
    """
    srcs = [int(s) for s in (inst.sources if sources is None else sources)]
    if len(srcs) == 1:
        return capacity_single_source(graph, inst, srcs[0], destinations)
    dests = list(inst.destinations) if destinations is None else list(destinations)
    if not dests:
        raise ConfigError("need at least one destination")
    best: CapacityResult | None = None
    for t in dests:
        result = FlowNetwork.build(graph, inst, srcs, int(t)).solve()
        if best is None or result.value < best.value:
            best = CapacityResult(result.value, int(t), result)
    return best
