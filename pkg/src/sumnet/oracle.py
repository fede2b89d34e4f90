"""Ground truth for small networks: exhaustive scalar-code enumeration and a
seeded random network generator."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import analysis
from .errors import GenerationFailed, SearchSpaceTooLarge
from .gf import PrimeField
from .multigraph import Edge, EdgeId, SumNetwork
from .netcode import SOURCE, ScalarLinearCode, edge_inputs, terminal_inputs

DEFAULT_CAPS = {2: 14, 3: 10}


def default_cap(p: int) -> int:
    if p in DEFAULT_CAPS:
        return DEFAULT_CAPS[p]
    budget = 3 ** 10
    s = 0
    while p ** (s + 1) <= budget:
        s += 1
    return s


def _slot_plan(net: SumNetwork, normalize: bool) -> list[tuple[EdgeId, list[int], list[int]]]:
    """Per edge (in processing order): (edge, free input positions, fixed-to-one positions).

    With ``normalize``: dead edges get no slots, inputs from dead edges are
    zero, and an edge with a single live input copies it with coefficient 1.
    """
    live = analysis.relevant_edges(net) if normalize else {e.id for e in net.edges}
    plan = []
    for eid in net.edge_order:
        ins = edge_inputs(net, eid)
        if eid not in live:
            plan.append((eid, [], []))
            continue
        pos = [i for i, src in enumerate(ins) if src == SOURCE or src in live]
        if normalize and len(pos) == 1:
            plan.append((eid, [], pos))
        else:
            plan.append((eid, pos, []))
    return plan


def count_slots(net: SumNetwork, normalize: bool = True) -> int:
    return sum(len(free) for _, free, _ in _slot_plan(net, normalize))


def brute_force_solvable(
    net: SumNetwork,
    field: PrimeField,
    cap: int | None = None,
    normalize: bool = True,
) -> ScalarLinearCode | None:
    """Lexicographically least scalar linear code solving ``net``, or None.

    Local edge coefficients are enumerated exhaustively (depth first in edge
    order, pruning as soon as a terminal's in-edges are all fixed); for each
    terminal the least decoder is found by enumerating its coefficients.
    ``None`` is a complete answer: no linear code over ``field`` exists.
    """
    p = field.p
    cap = default_cap(p) if cap is None else cap
    plan = _slot_plan(net, normalize)
    slots = sum(len(free) for _, free, _ in plan)
    if slots > cap:
        raise SearchSpaceTooLarge(slots, cap)

    l = len(net.sources)
    ones = (1,) * l
    order = [eid for eid, _, _ in plan]
    pos_of = {eid: i for i, eid in enumerate(order)}
    term_ins = [terminal_inputs(net, j) for j in range(len(net.terminals))]
    # terminal j can be checked once the last of its in-edges is assigned
    check_at: dict[int, list[int]] = {}
    for j, ins in enumerate(term_ins):
        at = max((pos_of[e] for e in ins), default=-1)
        check_at.setdefault(at, []).append(j)
    unit = [tuple(int(i == s) for i in range(l)) for s in range(l)]
    zero = (0,) * l
    src_idx = {s: i for i, s in enumerate(net.sources)}
    decoder_memo: dict[tuple, tuple[int, ...] | None] = {}

    def least_decoder(vecs: tuple[tuple[int, ...], ...]) -> tuple[int, ...] | None:
        if vecs in decoder_memo:
            return decoder_memo[vecs]
        found = None
        for cs in product(range(p), repeat=len(vecs)):
            acc = [0] * l
            for c, v in zip(cs, vecs):
                if c:
                    for i in range(l):
                        acc[i] += c * v[i]
            if tuple(a % p for a in acc) == ones:
                found = cs
                break
        decoder_memo[vecs] = found
        return found

    vec: dict[EdgeId, tuple[int, ...]] = {}
    maps: dict[EdgeId, tuple[int, ...]] = {}
    decoders: dict[int, tuple[int, ...]] = {}

    pre = check_at.get(-1, [])
    for j in pre:
        d = least_decoder(())
        if d is None:
            return None
        decoders[j] = d

    def input_vectors(eid: EdgeId) -> list[tuple[int, ...]]:
        tail = net.edge_map[eid].tail
        return [unit[src_idx[tail]] if src == SOURCE else vec[src] for src in edge_inputs(net, eid)]

    def dfs(i: int) -> bool:
        if i == len(plan):
            return True
        eid, free, fixed = plan[i]
        ins = input_vectors(eid)
        width = len(ins)
        choices = product(range(p), repeat=len(free)) if free else [()]
        for values in choices:
            coeffs = [0] * width
            for q in fixed:
                coeffs[q] = 1
            for q, v in zip(free, values):
                coeffs[q] = v
            acc = [0] * l
            for c, v in zip(coeffs, ins):
                if c:
                    for t in range(l):
                        acc[t] += c * v[t]
            vec[eid] = tuple(a % p for a in acc) if width else zero
            maps[eid] = tuple(coeffs)
            ok = True
            for j in check_at.get(i, ()):
                d = least_decoder(tuple(vec[e] for e in term_ins[j]))
                if d is None:
                    ok = False
                    break
                decoders[j] = d
            if ok and dfs(i + 1):
                return True
        return False

    if not dfs(0):
        return None
    return ScalarLinearCode(field, dict(maps), tuple(decoders[j] for j in range(len(net.terminals))))


# ---------------------------------------------------------------------------
# random networks

@dataclass(frozen=True)
class GeneratorConfig:
    node_budget: int = 9
    edge_budget: int = 12
    seed: int = 0
    ensure_connected: bool = True
    ensure_kappa: int | None = None
    max_slots: int | None = None
    parallel_prob: float = 0.1
    max_attempts: int = 10_000
    # "layered": uniform layered DAG; "bridged": two bridge links a1->b1 and
    # a2->b2 fed by two sources each, plus random extra edges
    family: str = "layered"

    def __post_init__(self) -> None:
        if self.node_budget < 6:
            raise ValueError("a 3-source 3-terminal network needs at least 6 nodes")
        if self.edge_budget < 3:
            raise ValueError("edge budget too small")
        if self.family not in ("layered", "bridged"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "bridged" and (self.node_budget < 10 or self.edge_budget < 10):
            raise ValueError("the bridged family needs at least 10 nodes and 10 edges")


def _sample(rng: random.Random, cfg: GeneratorConfig) -> SumNetwork:
    n_internal = rng.randint(0, cfg.node_budget - 6)
    n_layers = 0 if n_internal == 0 else (1 if n_internal == 1 else rng.randint(1, 2))
    internal = list(range(6, 6 + n_internal))
    layers: list[list[int]] = [[0, 1, 2]]
    if n_layers == 1:
        layers.append(internal)
    elif n_layers == 2:
        cut = rng.randint(1, n_internal - 1)
        layers += [internal[:cut], internal[cut:]]
    layers.append([3, 4, 5])
    allowed = [
        (u, v)
        for a in range(len(layers))
        for b in range(a + 1, len(layers))
        for u in layers[a]
        for v in layers[b]
    ]
    m = rng.randint(6, cfg.edge_budget) if cfg.edge_budget >= 6 else cfg.edge_budget
    pairs: list[tuple[int, int]] = []
    while len(pairs) < m:
        if pairs and rng.random() < cfg.parallel_prob:
            pairs.append(rng.choice(pairs))
        else:
            pairs.append(rng.choice(allowed))
    names = {0: "s1", 1: "s2", 2: "s3", 3: "t1", 4: "t2", 5: "t3"}
    names.update({v: f"n{v - 5}" for v in internal})
    edges = [Edge(i, u, v) for i, (u, v) in enumerate(pairs)]
    return SumNetwork(
        range(6 + n_internal),
        edges,
        [0, 1, 2],
        [3, 4, 5],
        node_names=names,
        edge_names={i: f"e{i + 1}" for i in range(len(edges))},
    )


def _sample_bridged(rng: random.Random, cfg: GeneratorConfig) -> SumNetwork:
    # 0-2 sources, 3-5 terminals, 6/7 = a1/b1, 8/9 = a2/b2, extras after
    n_extra = rng.randint(0, cfg.node_budget - 10)
    extras = list(range(10, 10 + n_extra))
    upper = [6, 8] + extras[: n_extra // 2]
    lower = [7, 9] + extras[n_extra // 2:]
    pairs = [(0, 6), (2, 6), (6, 7), (7, 3), (7, 5), (1, 8), (2, 8), (8, 9), (9, 4), (9, 5)]
    # drop one or two feeder edges now and then
    for _ in range(rng.choice((0, 0, 1, 2))):
        pairs.remove(rng.choice([q for q in pairs if q not in ((6, 7), (8, 9))]))
    layers = [[0, 1, 2], upper, lower, [3, 4, 5]]
    allowed = [
        (u, v)
        for a in range(4)
        for b in range(a + 1, 4)
        for u in layers[a]
        for v in layers[b]
    ]
    allowed += [(6, 9), (8, 7)]
    # cross traffic between {s1, s2} and {t1, t2}, direct or through a relay
    for u, v in ((0, 3), (1, 4), (0, 4), (1, 3)):
        if rng.random() < 0.7:
            if extras and rng.random() < 0.3:
                pairs += [(u, extras[0]), (extras[0], v)]
            else:
                pairs.append((u, v))
    target = min(cfg.edge_budget, len(pairs) + rng.choice((0, 0, 1, 1, 2, 3)))
    while len(pairs) < target:
        if rng.random() < cfg.parallel_prob:
            pairs.append(rng.choice(pairs))
        else:
            pairs.append(rng.choice(allowed))
    del pairs[cfg.edge_budget:]
    rng.shuffle(pairs)
    sperm = rng.sample([0, 1, 2], 3)
    tperm = rng.sample([3, 4, 5], 3)
    names = {0: "s1", 1: "s2", 2: "s3", 3: "t1", 4: "t2", 5: "t3", 6: "a1", 7: "b1", 8: "a2", 9: "b2"}
    names.update({v: f"n{v - 9}" for v in extras})
    edges = [Edge(i, u, v) for i, (u, v) in enumerate(pairs)]
    return SumNetwork(
        range(10 + n_extra),
        edges,
        sperm,
        tperm,
        node_names=names,
        edge_names={i: f"e{i + 1}" for i in range(len(edges))},
    )


def generate_random(config: GeneratorConfig) -> SumNetwork:
    """Seeded random DAG from ``config.family``, in canonical id order.

    Sources have no in-edges and terminals no out-edges. Rejection sampling
    enforces connectivity, a target kappa and a slot ceiling when requested.
    """
    rng = random.Random(config.seed)
    sample = _sample_bridged if config.family == "bridged" else _sample
    for _ in range(config.max_attempts):
        net = sample(rng, config).canonical()
        if config.ensure_connected and not analysis.is_connected_sum_network(net):
            continue
        if config.ensure_kappa is not None and analysis.kappa(net) != config.ensure_kappa:
            continue
        if config.max_slots is not None and count_slots(net) > config.max_slots:
            continue
        return net
    raise GenerationFailed(f"no network met the constraints in {config.max_attempts} attempts")
