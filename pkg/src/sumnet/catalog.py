"""Hand-built reference networks used by tests, the acceptance suite and the CLI."""

from __future__ import annotations

from .multigraph import SumNetwork

SOURCES = ("s1", "s2", "s3")
TERMINALS = ("t1", "t2", "t3")


def bottleneck() -> SumNetwork:
    """Every source feeds u, a single link u->w, w feeds every terminal."""
    edges = [(f"s{i}", "u") for i in (1, 2, 3)] + [("bottleneck", "u", "w")] + [("w", f"t{j}") for j in (1, 2, 3)]
    return SumNetwork.from_edges(edges, SOURCES, TERMINALS)


def nine_direct() -> SumNetwork:
    """One direct edge s_i -> t_j for each of the nine pairs."""
    edges = [(f"s{i}t{j}", f"s{i}", f"t{j}") for i in (1, 2, 3) for j in (1, 2, 3)]
    return SumNetwork.from_edges(edges, SOURCES, TERMINALS)


def doubled(net: SumNetwork) -> SumNetwork:
    return net.add_parallel(e.id for e in net.edges)


def nonsolvable_witness() -> SumNetwork:
    """Two incomparable bridges e1 (s1,s3 -> t1,t3) and e2 (s2,s3 -> t2,t3),
    plus direct s1->t2 and s2->t1. Edges e1, e2 with the identity labeling
    satisfy all six nonsolvability conditions."""
    edges = [
        ("s1a1", "s1", "a1"),
        ("s3a1", "s3", "a1"),
        ("e1", "a1", "b1"),
        ("b1t1", "b1", "t1"),
        ("b1t3", "b1", "t3"),
        ("s2a2", "s2", "a2"),
        ("s3a2", "s3", "a2"),
        ("e2", "a2", "b2"),
        ("b2t2", "b2", "t2"),
        ("b2t3", "b2", "t3"),
        ("s1t2", "s1", "t2"),
        ("s2t1", "s2", "t1"),
    ]
    return SumNetwork.from_edges(edges, SOURCES, TERMINALS)


def except_f2_witness() -> SumNetwork:
    """The nonsolvable witness plus direct s1->t1 and s2->t2.

    Now e1 disconnects exactly (s1,t3), (s3,t1) and e2 exactly (s2,t3),
    (s3,t2): solvable over every field but GF(2).
    """
    net = nonsolvable_witness()
    edges = [(net.edge_names[e.id], net.node_names[e.tail], net.node_names[e.head]) for e in net.edges]
    edges += [("s1t1", "s1", "t1"), ("s2t2", "s2", "t2")]
    return SumNetwork.from_edges(edges, SOURCES, TERMINALS)


def except_f2_shared() -> SumNetwork:
    """Variant whose s1/s2 -> t1/t2 traffic shares one middle link m->c."""
    net = nonsolvable_witness()
    edges = [(net.edge_names[e.id], net.node_names[e.tail], net.node_names[e.head]) for e in net.edges if net.edge_names[e.id] not in ("s1t2", "s2t1")]
    edges += [("s1m", "s1", "m"), ("s2m", "s2", "m"), ("mc", "m", "c"), ("ct1", "c", "t1"), ("ct2", "c", "t2")]
    return SumNetwork.from_edges(edges, SOURCES, TERMINALS)


NAMED = {
    "bottleneck": bottleneck,
    "nine-direct": nine_direct,
    "nonsolvable": nonsolvable_witness,
    "except-f2": except_f2_witness,
    "except-f2-shared": except_f2_shared,
}
