"""Immutable directed acyclic multigraph with designated sources and terminals."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import CycleDetected, UnknownEdge, UnknownNode, ValidationError

NodeId = int
EdgeId = int


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    tail: NodeId
    head: NodeId


class SumNetwork:
    """A sum-network: DAG plus ordered source and terminal lists.

    Node and edge ids are small ints that stay fixed under edge removal,
    reversal and parallel augmentation. Optional names are carried along for
    reports and file round trips.
    """

    def __init__(
        self,
        nodes: Iterable[NodeId],
        edges: Iterable[Edge],
        sources: Sequence[NodeId],
        terminals: Sequence[NodeId],
        node_names: Mapping[NodeId, str] | None = None,
        edge_names: Mapping[EdgeId, str] | None = None,
    ) -> None:
        self.nodes: tuple[NodeId, ...] = tuple(sorted(set(nodes)))
        self.edges: tuple[Edge, ...] = tuple(sorted(edges, key=lambda e: e.id))
        self.sources: tuple[NodeId, ...] = tuple(sources)
        self.terminals: tuple[NodeId, ...] = tuple(terminals)
        node_set = set(self.nodes)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate edge ids")
        for e in self.edges:
            if e.tail not in node_set or e.head not in node_set:
                raise UnknownNode(f"edge {e.id} references an undeclared node")
            if e.tail == e.head:
                raise CycleDetected(f"self-loop on node {e.tail}")
        for v in (*self.sources, *self.terminals):
            if v not in node_set:
                raise UnknownNode(v)
        if len(set(self.sources)) != len(self.sources) or len(set(self.terminals)) != len(self.terminals):
            raise ValidationError("repeated source or terminal")
        if set(self.sources) & set(self.terminals):
            raise ValidationError("sources and terminals must be disjoint")
        self.node_names = {v: (node_names or {}).get(v, f"v{v}") for v in self.nodes}
        self.edge_names = {e.id: (edge_names or {}).get(e.id, f"e{e.id}") for e in self.edges}
        # raises CycleDetected
        self.topological_order

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str] | tuple[str, str, str]],
        sources: Sequence[str],
        terminals: Sequence[str],
        extra_nodes: Iterable[str] = (),
    ) -> "SumNetwork":
        """Build from named edges ``(tail, head)`` or ``(name, tail, head)``.

        Node ids follow first appearance with sources first, then terminals.
        """
        names: dict[str, int] = {}

        def nid(name: str) -> int:
            if name not in names:
                names[name] = len(names)
            return names[name]

        for n in (*sources, *terminals, *extra_nodes):
            nid(n)
        built = []
        edge_names = {}
        for i, spec in enumerate(edges):
            if len(spec) == 3:
                ename, tail, head = spec  # type: ignore[misc]
            else:
                tail, head = spec  # type: ignore[misc]
                ename = f"{tail}->{head}"
                if ename in edge_names.values():
                    ename = f"{ename}#{i}"
            built.append(Edge(i, nid(tail), nid(head)))
            edge_names[i] = ename
        return cls(
            names.values(),
            built,
            [names[s] for s in sources],
            [names[t] for t in terminals],
            node_names={v: k for k, v in names.items()},
            edge_names=edge_names,
        )

    def _derive(self, edges: Iterable[Edge], sources=None, terminals=None, edge_names=None) -> "SumNetwork":
        return SumNetwork(
            self.nodes,
            edges,
            self.sources if sources is None else sources,
            self.terminals if terminals is None else terminals,
            node_names=self.node_names,
            edge_names=self.edge_names if edge_names is None else edge_names,
        )

    # -- basic lookups -------------------------------------------------------

    @cached_property
    def edge_map(self) -> dict[EdgeId, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self.edge_map[eid]
        except KeyError:
            raise UnknownEdge(eid) from None

    def _check_node(self, v: NodeId) -> None:
        if v not in self._node_set:
            raise UnknownNode(v)

    @cached_property
    def _node_set(self) -> frozenset[NodeId]:
        return frozenset(self.nodes)

    @cached_property
    def _in(self) -> dict[NodeId, tuple[EdgeId, ...]]:
        d: dict[NodeId, list[EdgeId]] = {v: [] for v in self.nodes}
        for e in self.edges:
            d[e.head].append(e.id)
        return {v: tuple(ids) for v, ids in d.items()}

    @cached_property
    def _out(self) -> dict[NodeId, tuple[EdgeId, ...]]:
        d: dict[NodeId, list[EdgeId]] = {v: [] for v in self.nodes}
        for e in self.edges:
            d[e.tail].append(e.id)
        return {v: tuple(ids) for v, ids in d.items()}

    def in_edges(self, v: NodeId) -> tuple[EdgeId, ...]:
        self._check_node(v)
        return self._in[v]

    def out_edges(self, v: NodeId) -> tuple[EdgeId, ...]:
        self._check_node(v)
        return self._out[v]

    def source_index(self, v: NodeId) -> int | None:
        try:
            return self.sources.index(v)
        except ValueError:
            return None

    def node_id(self, name: str) -> NodeId:
        for v, n in self.node_names.items():
            if n == name:
                return v
        raise UnknownNode(name)

    def edge_id(self, name: str) -> EdgeId:
        for e, n in self.edge_names.items():
            if n == name:
                return e
        raise UnknownEdge(name)

    @property
    def is_3s3t(self) -> bool:
        return len(self.sources) == 3 and len(self.terminals) == 3

    # -- order and reachability ---------------------------------------------

    @cached_property
    def topological_order(self) -> tuple[NodeId, ...]:
        indeg = {v: 0 for v in self.nodes}
        for e in self.edges:
            indeg[e.head] += 1
        ready = deque(v for v in self.nodes if indeg[v] == 0)
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for eid in self._out[v]:
                h = self.edge_map[eid].head
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
        if len(order) != len(self.nodes):
            raise CycleDetected("edge set contains a directed cycle")
        return tuple(order)

    @cached_property
    def edge_order(self) -> tuple[EdgeId, ...]:
        """Edges sorted so every edge comes after all edges into its tail."""
        pos = {v: i for i, v in enumerate(self.topological_order)}
        return tuple(e.id for e in sorted(self.edges, key=lambda e: (pos[e.tail], e.id)))

    @cached_property
    def descendants_mask(self) -> dict[NodeId, int]:
        """Bitmask of proper descendants per node (bit v set iff path of length >= 1)."""
        desc: dict[NodeId, int] = {}
        for v in reversed(self.topological_order):
            m = 0
            for eid in self._out[v]:
                h = self.edge_map[eid].head
                m |= (1 << h) | desc[h]
            desc[v] = m
        return desc

    def reachable(self, u: NodeId, v: NodeId) -> bool:
        """True iff a directed path with at least one edge runs from u to v."""
        self._check_node(u)
        self._check_node(v)
        return bool(self.descendants_mask[u] >> v & 1)

    def descendants(self, v: NodeId) -> set[NodeId]:
        self._check_node(v)
        m = self.descendants_mask[v]
        return {u for u in self.nodes if m >> u & 1}

    def ancestors(self, v: NodeId) -> set[NodeId]:
        self._check_node(v)
        return {u for u in self.nodes if self.descendants_mask[u] >> v & 1}

    def edge_precedes(self, e1: EdgeId, e2: EdgeId) -> bool:
        """``e1 -> e2``: head(e1) reaches tail(e2), counting head(e1) == tail(e2)."""
        a, b = self.edge(e1), self.edge(e2)
        return a.head == b.tail or self.reachable(a.head, b.tail)

    # -- structural transforms -----------------------------------------------

    def remove_edges(self, edges: Iterable[EdgeId]) -> "SumNetwork":
        drop = set(edges)
        for eid in drop:
            self.edge(eid)
        if not drop:
            return self
        return self._derive([e for e in self.edges if e.id not in drop])

    def reverse(self) -> "SumNetwork":
        return self._derive(
            [Edge(e.id, e.head, e.tail) for e in self.edges],
            sources=self.terminals,
            terminals=self.sources,
        )

    def add_parallel(self, edges: Iterable[EdgeId]) -> "SumNetwork":
        new = list(self.edges)
        names = dict(self.edge_names)
        next_id = max((e.id for e in self.edges), default=-1) + 1
        for eid in sorted(set(edges)):
            e = self.edge(eid)
            new.append(Edge(next_id, e.tail, e.head))
            names[next_id] = f"{self.edge_names[eid]}*"
            next_id += 1
        return self._derive(new, edge_names=names)

    def canonical(self) -> "SumNetwork":
        """Same network with ids renumbered: sources first (in order), then
        terminals, then the remaining nodes; edges keep their relative order."""
        rest = [v for v in self.nodes if v not in self.sources and v not in self.terminals]
        new_id = {v: i for i, v in enumerate([*self.sources, *self.terminals, *rest])}
        eids = {e.id: i for i, e in enumerate(self.edges)}
        return SumNetwork(
            range(len(new_id)),
            [Edge(eids[e.id], new_id[e.tail], new_id[e.head]) for e in self.edges],
            [new_id[s] for s in self.sources],
            [new_id[t] for t in self.terminals],
            node_names={new_id[v]: n for v, n in self.node_names.items()},
            edge_names={eids[e]: n for e, n in self.edge_names.items()},
        )

    def structure(self) -> tuple:
        """Hashable structural fingerprint (ids, endpoints, terminals)."""
        return (
            self.nodes,
            tuple((e.id, e.tail, e.head) for e in self.edges),
            self.sources,
            self.terminals,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SumNetwork):
            return NotImplemented
        return self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash(self.structure())

    def __repr__(self) -> str:
        return f"SumNetwork(nodes={len(self.nodes)}, edges={len(self.edges)}, sources={self.sources}, terminals={self.terminals})"


# -- module-level operations --------------------------------------------------

def topological_order(net: SumNetwork) -> list[NodeId]:
    return list(net.topological_order)


def reachable(net: SumNetwork, u: NodeId, v: NodeId) -> bool:
    return net.reachable(u, v)


def gamma(net: SumNetwork, a: Iterable[NodeId] = (), b: Iterable[NodeId] = ()) -> set[NodeId]:
    """Nodes reachable from every node of ``a`` and reaching every node of ``b``."""
    a, b = set(a), set(b)
    for v in a | b:
        net._check_node(v)
    if a & b:
        raise ValueError("A and B must be disjoint")
    desc = net.descendants_mask
    out = set()
    for v in net.nodes:
        if all(desc[u] >> v & 1 for u in a) and all(desc[v] >> w & 1 for w in b):
            out.add(v)
    return out


def mincut(net: SumNetwork, a: Iterable[NodeId], b: Iterable[NodeId]) -> int:
    """Least number of edges whose removal leaves no path from A to B.

    Unit-capacity max flow from a virtual super-source wired to A to a
    virtual super-sink wired from B, using BFS augmenting paths.
    """
    a, b = set(a), set(b)
    if not a or not b:
        raise ValueError("A and B must be nonempty")
    for v in a | b:
        net._check_node(v)
    if a & b:
        raise ValueError("A and B must be disjoint")
    big = len(net.edges) + 1
    src, snk = -1, -2
    # residual capacities on arcs keyed by index; arcs come in forward/back pairs
    heads: list[int] = []
    caps: list[int] = []
    adj: dict[int, list[int]] = {v: [] for v in (*net.nodes, src, snk)}

    def arc(u: int, v: int, c: int) -> None:
        adj[u].append(len(heads))
        heads.append(v)
        caps.append(c)
        adj[v].append(len(heads))
        heads.append(u)
        caps.append(0)

    for e in net.edges:
        arc(e.tail, e.head, 1)
    for v in a:
        arc(src, v, big)
    for v in b:
        arc(v, snk, big)
    flow = 0
    while True:
        parent: dict[int, int] = {src: -1}
        queue = deque([src])
        while queue and snk not in parent:
            u = queue.popleft()
            for i in adj[u]:
                w = heads[i]
                if caps[i] > 0 and w not in parent:
                    parent[w] = i
                    queue.append(w)
        if snk not in parent:
            return flow
        v = snk
        while v != src:
            i = parent[v]
            caps[i] -= 1
            caps[i ^ 1] += 1
            v = heads[i ^ 1]
        flow += 1


def reverse(net: SumNetwork) -> SumNetwork:
    return net.reverse()


def remove_edges(net: SumNetwork, edges: Iterable[EdgeId]) -> SumNetwork:
    return net.remove_edges(edges)


def shortest_path(
    net: SumNetwork,
    start: NodeId,
    goal: NodeId,
    avoid: Iterable[EdgeId] = (),
) -> list[EdgeId] | None:
    """Fewest-edge path as an edge list; ties broken by smallest edge-id sequence.

    ``start == goal`` yields the empty path.
    """
    avoid = set(avoid)
    if start == goal:
        return []
    # distance to goal, then greedy walk picking the smallest edge id on a shortest route
    dist = {goal: 0}
    for v in reversed(net.topological_order):
        if v == goal:
            continue
        best = None
        for eid in net._out[v]:
            if eid in avoid:
                continue
            h = net.edge_map[eid].head
            if h in dist and (best is None or dist[h] + 1 < best):
                best = dist[h] + 1
        if best is not None:
            dist[v] = best
    if start not in dist:
        return None
    path = []
    v = start
    while v != goal:
        eid = min(
            e for e in net._out[v]
            if e not in avoid and net.edge_map[e].head in dist and dist[net.edge_map[e].head] == dist[v] - 1
        )
        path.append(eid)
        v = net.edge_map[eid].head
    return path
