"""Slow from-scratch reference computations. They share no code with the
package beyond reading ``net.edges``, ``net.sources`` and ``net.terminals``."""

from itertools import combinations


def edge_list(net, removed=()):
    removed = set(removed)
    return [(e.id, e.tail, e.head) for e in net.edges if e.id not in removed]


def dfs_reach(edges, start):
    """Nodes reachable from ``start`` by a path of at least one edge."""
    adj = {}
    for _, u, v in edges:
        adj.setdefault(u, []).append(v)
    seen = set()
    stack = list(adj.get(start, []))
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj.get(v, []))
    return seen


def connected(net, removed=()):
    edges = edge_list(net, removed)
    return {(i, j) for i, s in enumerate(net.sources) for j, t in enumerate(net.terminals) if t in dfs_reach(edges, s)}


def kappa(net):
    base = connected(net)
    return max((len(base - connected(net, [e.id])) for e in net.edges), default=0)


def mincut(net, a, b):
    """Fewest edges whose removal separates every node of ``a`` from every node of ``b``."""
    ids = [e.id for e in net.edges]

    def cut(removed):
        edges = edge_list(net, removed)
        return all(v not in dfs_reach(edges, u) for u in a for v in b)

    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            if cut(combo):
                return size
    return len(ids)


def simple_paths(net, u, v):
    """All u->v paths as frozensets of edge ids."""
    out_edges = {}
    for eid, t, h in edge_list(net):
        out_edges.setdefault(t, []).append((eid, h))
    found = []

    def walk(node, used):
        if node == v and used:
            found.append(frozenset(used))
            return
        for eid, h in out_edges.get(node, []):
            walk(h, used + [eid])

    walk(u, [])
    return found


def max_disjoint_paths(net, u, v):
    """Largest set of pairwise edge-disjoint u->v paths, by exhaustive packing."""
    paths = simple_paths(net, u, v)
    best = 0

    def pack(i, used, count):
        nonlocal best
        best = max(best, count)
        if i == len(paths) or count + (len(paths) - i) <= best:
            return
        if not paths[i] & used:
            pack(i + 1, used | paths[i], count + 1)
        pack(i + 1, used, count)

    pack(0, frozenset(), 0)
    return best
