"""Per-edge disconnection analysis, maximum-disconnectivity and A/B/C tagging."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotThreeByThree
from .multigraph import EdgeId, NodeId, SumNetwork

Pair = tuple[int, int]  # (source index, terminal index), 0-based


def connectivity(net: SumNetwork) -> list[list[bool]]:
    """``conn[i][j]`` is True iff source i reaches terminal j."""
    desc = net.descendants_mask
    return [[bool(desc[s] >> t & 1) for t in net.terminals] for s in net.sources]


def connected_pairs(net: SumNetwork) -> frozenset[Pair]:
    desc = net.descendants_mask
    return frozenset(
        (i, j)
        for i, s in enumerate(net.sources)
        for j, t in enumerate(net.terminals)
        if desc[s] >> t & 1
    )


@dataclass(frozen=True)
class DisconnectSet:
    edge: EdgeId
    pairs: frozenset[Pair]

    def __len__(self) -> int:
        return len(self.pairs)


def disconnect_set(net: SumNetwork, e: EdgeId) -> DisconnectSet:
    """Source-terminal pairs connected in ``net`` but not in ``net - {e}``."""
    net.edge(e)
    before = connected_pairs(net)
    after = connected_pairs(net.remove_edges([e]))
    return DisconnectSet(e, before - after)


def disconnect_sets(net: SumNetwork) -> dict[EdgeId, DisconnectSet]:
    before = connected_pairs(net)
    return {e.id: DisconnectSet(e.id, before - connected_pairs(net.remove_edges([e.id]))) for e in net.edges}


def kappa(net: SumNetwork) -> int:
    """Maximum number of source-terminal pairs one edge removal disconnects."""
    return max((len(d) for d in disconnect_sets(net).values()), default=0)


def sources_reaching(net: SumNetwork, v: NodeId) -> set[int]:
    """Source indices that equal ``v`` or have a path to it."""
    desc = net.descendants_mask
    return {i for i, s in enumerate(net.sources) if s == v or desc[s] >> v & 1}


def terminals_reached(net: SumNetwork, v: NodeId) -> set[int]:
    """Terminal indices that equal ``v`` or are reachable from it."""
    desc = net.descendants_mask[v]
    return {j for j, t in enumerate(net.terminals) if t == v or desc >> t & 1}


def classify_abc(net: SumNetwork, _sets: dict[EdgeId, DisconnectSet] | None = None) -> dict[EdgeId, frozenset[str]]:
    """Tag every maximum-disconnecting edge with its subset of {"A", "B", "C"}.

    A: head reaches at most one terminal. B: at most one source reaches the
    tail. C: at least two on both sides. Sources and terminals count when
    they coincide with the tail or head.
    """
    sets = _sets if _sets is not None else disconnect_sets(net)
    k = max((len(d) for d in sets.values()), default=0)
    out: dict[EdgeId, frozenset[str]] = {}
    for eid, d in sets.items():
        if len(d) != k:
            continue
        e = net.edge(eid)
        ns = len(sources_reaching(net, e.tail))
        nt = len(terminals_reached(net, e.head))
        tags = set()
        if nt <= 1:
            tags.add("A")
        if ns <= 1:
            tags.add("B")
        if ns >= 2 and nt >= 2:
            tags.add("C")
        out[eid] = frozenset(tags)
    return out


def is_connected_sum_network(net: SumNetwork) -> bool:
    return all(all(row) for row in connectivity(net))


def find_hub_node(net: SumNetwork) -> NodeId | None:
    """A node fed by all sources and reaching two terminals, or fed by two
    sources and reaching all terminals. Lowest node id wins."""
    if not net.is_3s3t:
        raise NotThreeByThree("hub search needs exactly 3 sources and 3 terminals")
    for v in net.nodes:
        ns = len(sources_reaching(net, v))
        nt = len(terminals_reached(net, v))
        if (ns == 3 and nt >= 2) or (ns >= 2 and nt == 3):
            return v
    return None


def has_endpoint_path(net: SumNetwork) -> bool:
    """True if some source reaches another source or some terminal another terminal."""
    desc = net.descendants_mask
    for group in (net.sources, net.terminals):
        for a in group:
            if any(a != b and desc[a] >> b & 1 for b in group):
                return True
    return False


def relevant_edges(net: SumNetwork) -> set[EdgeId]:
    """Edges fed by some source and feeding some terminal; no code can use the rest."""
    out = set()
    for e in net.edges:
        if sources_reaching(net, e.tail) and terminals_reached(net, e.head):
            out.add(e.id)
    return out


def augment_parallel(net: SumNetwork, edges: Iterable[EdgeId]) -> SumNetwork:
    """Add one parallel copy of every listed edge."""
    return net.add_parallel(edges)


@dataclass
class AnalysisReport:
    kappa: int
    disconnect: list[DisconnectSet]
    max_disconnecting: frozenset[EdgeId]
    abc: dict[EdgeId, frozenset[str]]
    connected: bool
    connectivity: list[list[bool]] = field(default_factory=list)


def analyze(net: SumNetwork) -> AnalysisReport:
    sets = disconnect_sets(net)
    k = max((len(d) for d in sets.values()), default=0)
    return AnalysisReport(
        kappa=k,
        disconnect=[sets[e.id] for e in net.edges],
        max_disconnecting=frozenset(e for e, d in sets.items() if len(d) == k),
        abc=classify_abc(net, sets),
        connected=is_connected_sum_network(net),
        connectivity=connectivity(net),
    )
