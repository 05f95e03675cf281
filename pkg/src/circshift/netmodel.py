"""Multicast networks: unit-capacity acyclic multigraphs with one source."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence


class NetworkError(ValueError):
    """A network violates one of the standing multicast assumptions."""


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str
    label: str | None = None

    @property
    def name(self) -> str:
        return self.label or f"e{self.id}"


@dataclass(frozen=True)
class PathSet:
    receiver: str
    paths: tuple[tuple[int, ...], ...]

    def pairs(self) -> set[tuple[int, int]]:
        """Adjacent pairs (d, e) traversed by some path."""
        return {(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)}


@dataclass(frozen=True)
class MulticastNetwork:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    receivers: tuple[str, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_edges(cls, source: str, receivers: Sequence[str],
                   edges: Sequence[tuple], nodes: Sequence[str] | None = None
                   ) -> "MulticastNetwork":
        """Build from ``(tail, head)`` or ``(tail, head, label)`` tuples numbered from 1."""
        es = tuple(Edge(i, *ends) for i, ends in enumerate(edges, start=1))
        if nodes is None:
            seen = dict.fromkeys([source])
            for e in es:
                seen.setdefault(e.tail)
                seen.setdefault(e.head)
            seen.update(dict.fromkeys(receivers))
            nodes = list(seen)
        return cls(tuple(nodes), es, source, tuple(receivers))

    @cached_property
    def edge(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _in(self) -> dict[str, tuple[int, ...]]:
        d: dict[str, list[int]] = {v: [] for v in self.nodes}
        for e in sorted(self.edges, key=lambda e: e.id):
            d.setdefault(e.head, []).append(e.id)
        return {v: tuple(ids) for v, ids in d.items()}

    @cached_property
    def _out(self) -> dict[str, tuple[int, ...]]:
        d: dict[str, list[int]] = {v: [] for v in self.nodes}
        for e in sorted(self.edges, key=lambda e: e.id):
            d.setdefault(e.tail, []).append(e.id)
        return {v: tuple(ids) for v, ids in d.items()}

    def in_edges(self, v: str) -> tuple[int, ...]:
        return self._in.get(v, ())

    def out_edges(self, v: str) -> tuple[int, ...]:
        return self._out.get(v, ())

    @property
    def omega(self) -> int:
        return len(self.out_edges(self.source))

    def edge_by_name(self, name: str) -> int:
        for e in self.edges:
            if e.name == name:
                return e.id
        raise KeyError(name)

    @cached_property
    def node_order(self) -> tuple[str, ...]:
        """Kahn's algorithm, ties broken by position in ``nodes``."""
        pos = {v: i for i, v in enumerate(self.nodes)}
        indeg = {v: 0 for v in self.nodes}
        for e in self.edges:
            indeg[e.head] += 1
        ready = sorted((v for v in self.nodes if indeg[v] == 0), key=pos.__getitem__)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for eid in self.out_edges(v):
                h = self.edge[eid].head
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
                    ready.sort(key=pos.__getitem__)
        if len(order) != len(self.nodes):
            raise NetworkError("network has a directed cycle")
        return tuple(order)

    @cached_property
    def edge_order(self) -> tuple[int, ...]:
        """Out(s) first, then by head-node topological position, ties by edge id."""
        rank = {v: i for i, v in enumerate(self.node_order)}
        src = self.out_edges(self.source)
        rest = sorted((e for e in self.edges if e.tail != self.source),
                      key=lambda e: (rank[e.head], e.id))
        return tuple(src) + tuple(e.id for e in rest)

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """All (d, e) sharing a node with d incoming and e outgoing, ordered by (e, d)."""
        pairs = [(d, e.id) for e in self.edges for d in self.in_edges(e.tail)]
        return sorted(pairs, key=lambda p: (p[1], p[0]))

    def validate(self) -> "MulticastNetwork":
        """Raise NetworkError naming the first violated assumption; return self otherwise."""
        names = set(self.nodes)
        if len(names) != len(self.nodes):
            raise NetworkError("duplicate node names")
        ids = [e.id for e in self.edges]
        if sorted(ids) != list(range(1, len(ids) + 1)):
            raise NetworkError("edge ids must be unique and dense from 1")
        for e in self.edges:
            if e.tail not in names or e.head not in names:
                raise NetworkError(f"edge {e.name} references an unknown node")
            if e.tail == e.head:
                raise NetworkError(f"edge {e.name} is a self-loop")
        if self.source not in names:
            raise NetworkError(f"unknown source {self.source!r}")
        if not self.receivers:
            raise NetworkError("no receivers")
        for t in self.receivers:
            if t not in names:
                raise NetworkError(f"unknown receiver {t!r}")
            if t == self.source:
                raise NetworkError("the source cannot be a receiver")
        if len(set(self.receivers)) != len(self.receivers):
            raise NetworkError("duplicate receivers")
        self.node_order  # raises on cycles
        if self.in_edges(self.source):
            raise NetworkError("the source has incoming edges")
        w = self.omega
        if w == 0:
            raise NetworkError("the source has no outgoing edges")
        for t in self.receivers:
            if len(self.in_edges(t)) != w:
                raise NetworkError(
                    f"receiver {t!r} has {len(self.in_edges(t))} incoming edges, expected omega={w}")
            for eid in self.in_edges(t):
                if self.edge[eid].tail == self.source:
                    raise NetworkError(f"edge {self.edge[eid].name} leads from the source to {t!r}")
        for t in self.receivers:
            flow = len(_max_flow_paths(self, t))
            if flow < w:
                raise NetworkError(f"max-flow from source to {t!r} is {flow} < omega={w}")
        return self

    def edge_disjoint_paths(self, t: str) -> PathSet:
        key = ("paths", t)
        if key not in self._cache:
            paths = _max_flow_paths(self, t)
            if len(paths) < self.omega:
                raise NetworkError(f"only {len(paths)} edge-disjoint paths to {t!r}")
            self._cache[key] = PathSet(t, tuple(paths))
        return self._cache[key]


def _max_flow_paths(net: MulticastNetwork, t: str) -> list[tuple[int, ...]]:
    """Unit-capacity augmenting paths (DFS, edges scanned in id order), then decomposition."""
    flow: dict[int, int] = {e.id: 0 for e in net.edges}

    def augment() -> bool:
        # residual arcs: forward on unused edges, backward on used ones
        stack = [(net.source, iter(_residual(net.source)))]
        parent: dict[str, tuple[int, int]] = {}
        visited = {net.source}

        while stack:
            v, it = stack[-1]
            step = next(it, None)
            if step is None:
                stack.pop()
                continue
            eid, direction, nxt = step
            if nxt in visited:
                continue
            visited.add(nxt)
            parent[nxt] = (eid, direction)
            if nxt == t:
                u = t
                while u != net.source:
                    eid, direction = parent[u]
                    flow[eid] += direction
                    e = net.edge[eid]
                    u = e.tail if direction == 1 else e.head
                return True
            stack.append((nxt, iter(_residual(nxt))))
        return False

    def _residual(v):
        arcs = [(eid, 1, net.edge[eid].head) for eid in net.out_edges(v) if flow[eid] == 0]
        arcs += [(eid, -1, net.edge[eid].tail) for eid in net.in_edges(v) if flow[eid] == 1]
        return sorted(arcs, key=lambda a: a[0])

    while augment():
        pass

    paths = []
    used = {eid for eid, f in flow.items() if f}
    for start in net.out_edges(net.source):
        if start not in used:
            continue
        path = [start]
        used.discard(start)
        v = net.edge[start].head
        while v != t:
            nxt = next(eid for eid in net.out_edges(v) if eid in used)
            used.discard(nxt)
            path.append(nxt)
            v = net.edge[nxt].head
        paths.append(tuple(path))
    return paths


def four_node_network() -> MulticastNetwork:
    """Source, two relays, one receiver; parallel edge pairs e1,e2 / e3,e4 / e5,e6."""
    return MulticastNetwork.from_edges(
        "s", ["t"], [("s", "u"), ("s", "u"), ("u", "w"), ("u", "w"), ("w", "t"), ("w", "t")],
        nodes=["s", "u", "w", "t"])


def butterfly_network() -> MulticastNetwork:
    return MulticastNetwork.from_edges(
        "s", ["t1", "t2"],
        [("s", "a"), ("s", "b"), ("a", "t1"), ("a", "c"), ("b", "c"), ("b", "t2"),
         ("c", "d"), ("d", "t1"), ("d", "t2")],
        nodes=["s", "a", "b", "c", "d", "t1", "t2"])


def combination_network(n: int) -> MulticastNetwork:
    """The (n, 2)-Combination Network.

    e1, e2 run s -> u and e3..e(n+2) run u -> v_i.  Receivers t_1, t_2, ... take
    the pairs (v_i, v_k), i < k, in lexicographic order; the edge v_i -> t_j is
    labelled ``e{i}{j}`` (``e{i}_{j}`` once n > 4) and numbered after the middle
    layer, receiver by receiver.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    vs = [f"v{i}" for i in range(1, n + 1)]
    pairs = list(combinations(range(1, n + 1), 2))
    ts = [f"t{j}" for j in range(1, len(pairs) + 1)]
    edges = [("s", "u", "e1"), ("s", "u", "e2")]
    edges += [("u", f"v{i}", f"e{i + 2}") for i in range(1, n + 1)]
    fmt = "e{}{}" if n <= 4 else "e{}_{}"
    for j, (a, b) in enumerate(pairs, start=1):
        edges.append((f"v{a}", f"t{j}", fmt.format(a, j)))
        edges.append((f"v{b}", f"t{j}", fmt.format(b, j)))
    return MulticastNetwork.from_edges("s", ts, edges, nodes=["s", "u", *vs, *ts])
