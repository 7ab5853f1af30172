"""Realizing per-vertex degree demands through a max-flow network.

Each vertex i of the input digraph gets two copies in the network: an
out-copy fed from the source with capacity ``out_demand[i]`` and an in-copy
draining to the sink with capacity ``in_demand[i]``.  A unit-capacity arc
connects out-copy i to in-copy j for every insertable digraph arc (i, j).
A unit of flow across such an arc corresponds to inserting (i, j), so an
integral maximum flow of value s yields an arc set meeting all demands
exactly whenever one exists.

The headline guarantee implemented by :func:`realize_demands`: when the
demands are balanced at total s, every per-vertex final degree stays within
a cap that is at most n - 1, and s exceeds twice the square of that cap,
a realizing arc set always exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Arc, Digraph


class UnbalancedDemandsError(ValueError):
    """Total indegree and outdegree increments differ."""


class PreconditionViolatedError(ValueError):
    """A guaranteed-realization precondition failed; `.condition` names it."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition {condition}: {message}")
        self.condition = condition


@dataclass(frozen=True)
class DemandVector:
    """Per-vertex nonnegative indegree/outdegree increments."""

    in_demand: tuple[int, ...]
    out_demand: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "in_demand", tuple(int(x) for x in self.in_demand))
        object.__setattr__(self, "out_demand", tuple(int(y) for y in self.out_demand))
        if len(self.in_demand) != len(self.out_demand):
            raise ValueError("demand vectors must have equal length")
        if any(x < 0 for x in self.in_demand) or any(y < 0 for y in self.out_demand):
            raise ValueError("demands must be nonnegative")

    @classmethod
    def zeros(cls, n: int) -> "DemandVector":
        return cls((0,) * n, (0,) * n)

    def __len__(self) -> int:
        return len(self.in_demand)

    @property
    def total_in(self) -> int:
        return sum(self.in_demand)

    @property
    def total_out(self) -> int:
        return sum(self.out_demand)

    @property
    def is_balanced(self) -> bool:
        return self.total_in == self.total_out


@dataclass(frozen=True)
class FlowNetwork:
    """Demand network for a digraph.

    Node numbering: source = 0, out-copy of vertex i = 1 + i, in-copy of
    vertex i = 1 + n + i, sink = 1 + 2n.  ``unit_arcs`` lists the insertable
    digraph arcs (i, j) backing the unit-capacity network arcs, sorted.
    """

    n: int
    source_caps: tuple[int, ...]
    sink_caps: tuple[int, ...]
    unit_arcs: tuple[Arc, ...]

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return 1 + 2 * self.n

    def out_copy(self, i: int) -> int:
        return 1 + i

    def in_copy(self, i: int) -> int:
        return 1 + self.n + i

    def node_count(self) -> int:
        return 2 * self.n + 2

    def edge_list(self) -> list[tuple[int, int, int]]:
        """Canonical (tail, head, capacity) listing for debugging dumps."""
        edges = [
            (self.source, self.out_copy(i), self.source_caps[i])
            for i in range(self.n)
        ]
        edges += [
            (self.in_copy(i), self.sink, self.sink_caps[i]) for i in range(self.n)
        ]
        edges += [
            (self.out_copy(i), self.in_copy(j), 1) for (i, j) in self.unit_arcs
        ]
        return edges


def build_network(d: Digraph, demands: DemandVector) -> FlowNetwork:
    """Build the demand network for d; deterministic node numbering."""
    if len(demands) != d.n:
        raise ValueError("demand vector length must equal vertex count")
    return FlowNetwork(
        n=d.n,
        source_caps=demands.out_demand,
        sink_caps=demands.in_demand,
        unit_arcs=tuple(d.non_arcs()),
    )


class _Dinic:
    """Blocking-flow max flow with integral capacities.

    Edges are stored as parallel arrays; edge k and k^1 are a forward/backward
    pair.  Adjacency preserves insertion order, which keeps results
    deterministic for a fixed construction order.
    """

    def __init__(self, nodes: int):
        self.adj: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        idx = len(self.to)
        self.adj[u].append(idx)
        self.to.append(v)
        self.cap.append(capacity)
        self.adj[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        return idx

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level[t] < 0:
                return total
            it = [0] * len(self.adj)
            while True:
                pushed = self._augment(s, t, float("inf"), level, it)
                if not pushed:
                    break
                total += pushed

    def _levels(self, s: int, t: int) -> list[int]:
        level = [-1] * len(self.adj)
        level[s] = 0
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for k in self.adj[u]:
                v = self.to[k]
                if self.cap[k] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment(self, u: int, t: int, limit, level, it) -> int:
        if u == t:
            return int(limit)
        while it[u] < len(self.adj[u]):
            k = self.adj[u][it[u]]
            v = self.to[k]
            if self.cap[k] > 0 and level[v] == level[u] + 1:
                pushed = self._augment(v, t, min(limit, self.cap[k]), level, it)
                if pushed:
                    self.cap[k] -= pushed
                    self.cap[k ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0


def max_flow(net: FlowNetwork) -> tuple[int, frozenset[Arc]]:
    """Maximum integral s-t flow and the digraph arcs of saturated unit arcs."""
    dinic = _Dinic(net.node_count())
    for i in range(net.n):
        dinic.add_edge(net.source, net.out_copy(i), net.source_caps[i])
    for i in range(net.n):
        dinic.add_edge(net.in_copy(i), net.sink, net.sink_caps[i])
    unit_edge_ids = [
        dinic.add_edge(net.out_copy(i), net.in_copy(j), 1)
        for (i, j) in net.unit_arcs
    ]
    value = dinic.max_flow(net.source, net.sink)
    saturated = frozenset(
        arc
        for arc, k in zip(net.unit_arcs, unit_edge_ids)
        if dinic.cap[k] == 0
    )
    return value, saturated


def try_realize_demands(d: Digraph, demands: DemandVector) -> set[Arc] | None:
    """Arc set meeting the demands exactly, or None if none exists.

    Succeeds iff the maximum flow of the demand network equals the balanced
    demand total.
    """
    if len(demands) != d.n:
        raise ValueError("demand vector length must equal vertex count")
    if not demands.is_balanced:
        raise UnbalancedDemandsError(
            f"total in {demands.total_in} != total out {demands.total_out}"
        )
    s = demands.total_in
    value, saturated = max_flow(build_network(d, demands))
    if value != s:
        return None
    return set(saturated)


def realize_demands(d: Digraph, demands: DemandVector, delta_star: int) -> set[Arc]:
    """Arc set meeting the demands exactly; guaranteed when preconditions hold.

    Preconditions (checked in order, first failure reported):
      I    delta_star <= n - 1
      II   indegree(v_i) + in_demand[i] <= delta_star for all i
      III  outdegree(v_i) + out_demand[i] <= delta_star for all i
      IV   sum(in_demand) == sum(out_demand) =: s
      V    s > 2 * delta_star**2

    Under I-V a realizing arc set of size exactly s always exists and is
    returned; the combinatorial argument is that any flow of smaller value
    would leave a pair of unsaturated copies whose residual neighborhoods,
    each of size at least n - delta_star, force an augmenting path.
    """
    if len(demands) != d.n:
        raise ValueError("demand vector length must equal vertex count")
    if delta_star > d.n - 1:
        raise PreconditionViolatedError(
            "I", f"delta_star {delta_star} exceeds n - 1 = {d.n - 1}"
        )
    for i in range(d.n):
        if d.indegree(i) + demands.in_demand[i] > delta_star:
            raise PreconditionViolatedError(
                "II",
                f"vertex {i}: indegree {d.indegree(i)} + demand "
                f"{demands.in_demand[i]} exceeds {delta_star}",
            )
    for i in range(d.n):
        if d.outdegree(i) + demands.out_demand[i] > delta_star:
            raise PreconditionViolatedError(
                "III",
                f"vertex {i}: outdegree {d.outdegree(i)} + demand "
                f"{demands.out_demand[i]} exceeds {delta_star}",
            )
    if not demands.is_balanced:
        raise PreconditionViolatedError(
            "IV", f"total in {demands.total_in} != total out {demands.total_out}"
        )
    s = demands.total_in
    if s <= 2 * delta_star * delta_star:
        raise PreconditionViolatedError(
            "V", f"s = {s} is not larger than 2 * {delta_star}**2"
        )
    arcs = try_realize_demands(d, demands)
    if arcs is None:
        raise AssertionError(
            "realization guarantee violated despite satisfied preconditions"
        )
    return arcs


def apply_demands(
    d: Digraph, demands: DemandVector, arcs: Iterable[Arc]
) -> bool:
    """Check that inserting the arcs changes each vertex degree by its demand."""
    arcs = set(arcs)
    gained_in = [0] * d.n
    gained_out = [0] * d.n
    for (u, v) in arcs:
        gained_out[u] += 1
        gained_in[v] += 1
    return (
        all((u, v) not in d.arcs and u != v for (u, v) in arcs)
        and gained_in == list(demands.in_demand)
        and gained_out == list(demands.out_demand)
    )
