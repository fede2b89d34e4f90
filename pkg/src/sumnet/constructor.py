"""Code synthesis: the explicit alpha/beta/gamma scheme for GF(2)-obstructed
networks, scalar code search, fractional code search and the two-edge cut
bound for nonsolvable networks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import analysis, gf
from .classifier import WitnessPair, check_theorem1, check_theorem2
from .errors import InvalidWitness, NoValidPaths
from .gf import FieldElement, Matrix, PrimeField
from .multigraph import EdgeId, SumNetwork, shortest_path
from .netcode import (
    SOURCE,
    FractionalLinearCode,
    ScalarLinearCode,
    edge_inputs,
    sum_target,
    terminal_inputs,
    verify_exhaustive,
    verify_fractional,
    verify_transfer,
)


@dataclass(frozen=True)
class SearchBudget:
    max_codes: int = 2_000_000
    # coefficients tried by the enumeration pass; None means {0, +1, -1}
    coefficient_set: tuple[int, ...] | None = None
    time_limit: float = 120.0

    def __post_init__(self) -> None:
        if self.max_codes <= 0 or self.time_limit <= 0:
            raise ValueError("budget values must be positive")


@dataclass
class SearchResult:
    """``code`` is None when nothing was found; ``complete`` says whether the
    whole space was covered (so None is definitive)."""

    code: ScalarLinearCode | FractionalLinearCode | None
    complete: bool
    explored: int = 0
    method: str = ""

    @property
    def found(self) -> bool:
        return self.code is not None


class _Budget:
    def __init__(self, budget: SearchBudget) -> None:
        self.left = budget.max_codes
        self.deadline = time.monotonic() + budget.time_limit
        self.explored = 0
        self.exhausted = False

    def tick(self) -> bool:
        self.explored += 1
        self.left -= 1
        if self.left < 0 or (self.explored % 256 == 0 and time.monotonic() > self.deadline):
            self.exhausted = True
        return not self.exhausted


# ---------------------------------------------------------------------------
# scalar search, pass 1: restricted coefficient enumeration

def _enumerate_restricted(net: SumNetwork, field: PrimeField, coeffs: Sequence[int], budget: _Budget) -> ScalarLinearCode | None:
    p = field.p
    coeffs = sorted({c % p for c in coeffs})
    nonzero = [c for c in coeffs if c]
    l = len(net.sources)
    ones = (1,) * l
    live = analysis.relevant_edges(net)
    order = list(net.edge_order)
    pos = {e: i for i, e in enumerate(order)}
    term_ins = [terminal_inputs(net, j) for j in range(len(net.terminals))]
    ready: dict[int, list[int]] = {}
    for j, ins in enumerate(term_ins):
        ready.setdefault(max((pos[e] for e in ins), default=-1), []).append(j)
    if -1 in ready:
        return None

    vec: dict[EdgeId, tuple[int, ...]] = {}
    maps: dict[EdgeId, tuple[int, ...]] = {}
    decoders: dict[int, tuple[int, ...]] = {}
    memo: dict[tuple, tuple[int, ...] | None] = {}

    def decode(vs: tuple) -> tuple[int, ...] | None:
        if vs not in memo:
            memo[vs] = None
            for cs in product(coeffs, repeat=len(vs)):
                acc = [sum(c * v[i] for c, v in zip(cs, vs)) % p for i in range(l)]
                if tuple(acc) == ones:
                    memo[vs] = cs
                    break
        return memo[vs]

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        eid = order[i]
        tail = net.edge_map[eid].tail
        ins = edge_inputs(net, eid)
        in_vecs = [tuple(int(s == tail) for s in net.sources) if src == SOURCE else vec[src] for src in ins]
        live_pos = [q for q, src in enumerate(ins) if eid in live and (src == SOURCE or src in live)]
        if len(live_pos) == 1 and nonzero:
            # copying a single input loses nothing; any nonzero scale can be undone downstream
            options = [tuple(nonzero[0] if q == live_pos[0] else 0 for q in range(len(ins)))]
        else:
            options = []
            for vals in product(coeffs, repeat=len(live_pos)):
                row = [0] * len(ins)
                for q, v in zip(live_pos, vals):
                    row[q] = v
                options.append(tuple(row))
        for row in options:
            if not budget.tick():
                return False
            vec[eid] = tuple(sum(c * v[t] for c, v in zip(row, in_vecs)) % p for t in range(l))
            maps[eid] = row
            ok = True
            for j in ready.get(i, ()):
                d = decode(tuple(vec[e] for e in term_ins[j]))
                if d is None:
                    ok = False
                    break
                decoders[j] = d
            if ok and dfs(i + 1):
                return True
            if budget.exhausted:
                return False
        return False

    if not dfs(0):
        return None
    return ScalarLinearCode(field, dict(maps), tuple(decoders[j] for j in range(len(net.terminals))))


# ---------------------------------------------------------------------------
# subspace search: works on global transfer matrices, any (k, n)

def _subspace_search(
    net: SumNetwork, field: PrimeField, k: int, n: int, budget: _Budget, prune: bool = True
) -> dict[EdgeId, Matrix] | None:
    """Choose, edge by edge, the row space each edge carries.

    An edge whose inputs span at most n dimensions forwards a basis of that
    span (anything else it could send is a function of it); otherwise every
    n-dimensional subspace of the input span is tried. Terminals need the
    rows of [I_k | I_k | I_k] inside the span of their in-edges. Returns the
    chosen global rows per edge, or None.

    With ``prune`` each terminal is tested as soon as its in-edges are set;
    without it every terminal waits for the last edge.
    """
    p = field.p
    l = len(net.sources)
    width = l * k
    target = sum_target(l, k)
    live = analysis.relevant_edges(net)
    order = [e for e in net.edge_order if e in live]
    pos = {e: i for i, e in enumerate(order)}
    term_ins = [[e for e in terminal_inputs(net, j) if e in live] for j in range(len(net.terminals))]
    final = len(order) - 1
    ready: dict[int, list[int]] = {}
    for j, ins in enumerate(term_ins):
        at = max((pos[e] for e in ins), default=-1) if prune else final
        ready.setdefault(at, []).append(j)
    if -1 in ready:
        return None
    selector = {
        s: tuple(tuple(int(c == i * k + r) for c in range(width)) for r in range(k))
        for i, s in enumerate(net.sources)
    }
    rows: dict[EdgeId, Matrix] = {}

    def covers(span: list[tuple[int, ...]]) -> bool:
        base = gf.rank(span, p)
        return all(gf.rank(span + [t], p) == base for t in target)

    def terminal_ok(j: int) -> bool:
        return covers([r for e in term_ins[j] for r in rows[e]])

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        eid = order[i]
        tail = net.edge_map[eid].tail
        stacked: list[tuple[int, ...]] = []
        for src in edge_inputs(net, eid):
            if src == SOURCE:
                stacked.extend(selector[tail])
            elif src in live:
                stacked.extend(rows[src])
        basis = gf.row_basis(stacked, p)
        if len(basis) <= n:
            options: Sequence[Matrix] = [basis]
        else:
            options = [gf.mat_mul(c, basis, p) for c in gf.echelon_coefficients(len(basis), n, p)]
        for choice in options:
            if not budget.tick():
                return False
            rows[eid] = choice
            if all(terminal_ok(j) for j in ready.get(i, ())) and dfs(i + 1):
                return True
            if budget.exhausted:
                return False
        return False

    return dict(rows) if dfs(0) else None


def _realize(net: SumNetwork, field: PrimeField, k: int, n: int, rows: dict[EdgeId, Matrix]) -> FractionalLinearCode:
    """Local matrices and decoders producing the chosen global rows."""
    p = field.p
    l = len(net.sources)
    width = l * k
    glob: dict[EdgeId, Matrix] = {}
    for e in net.edges:
        r = list(rows.get(e.id, ()))
        glob[e.id] = tuple(r + [(0,) * width] * (n - len(r)))
    selector = {
        s: tuple(tuple(int(c == i * k + r) for c in range(width)) for r in range(k))
        for i, s in enumerate(net.sources)
    }
    edge_maps: dict[EdgeId, tuple[Matrix, ...]] = {}
    for e in net.edges:
        ins = edge_inputs(net, e.id)
        blocks = [selector[e.tail] if src == SOURCE else glob[src] for src in ins]
        stacked = [r for b in blocks for r in b]
        local_rows = []
        for want in glob[e.id]:
            sol = gf.solve_combination(stacked, want, p) if stacked else ()
            if sol is None:
                raise RuntimeError("chosen rows are not in the input span")
            local_rows.append(sol)
        edge_maps[e.id] = _split(local_rows, [len(b) for b in blocks], n)
    decoders = []
    for j in range(len(net.terminals)):
        ins = terminal_inputs(net, j)
        stacked = [r for e in ins for r in glob[e]]
        local_rows = []
        for want in sum_target(l, k):
            sol = gf.solve_combination(stacked, want, p) if stacked else None
            if sol is None:
                raise RuntimeError("terminal cannot decode from the chosen rows")
            local_rows.append(sol)
        decoders.append(_split(local_rows, [n] * len(ins), k))
    return FractionalLinearCode(field, k, n, edge_maps, tuple(decoders))


def _split(local_rows: list[tuple[int, ...]], widths: list[int], nrows: int) -> tuple[Matrix, ...]:
    out = []
    start = 0
    for w in widths:
        out.append(tuple(tuple(r[start:start + w]) for r in local_rows) if local_rows else gf.zeros(nrows, w))
        start += w
    return tuple(out)


def _to_scalar(code: FractionalLinearCode) -> ScalarLinearCode:
    return ScalarLinearCode(
        code.field,
        {e: tuple(m[0][0] for m in ms) for e, ms in code.edge_maps.items()},
        tuple(tuple(m[0][0] for m in dec) for dec in code.terminal_decoders),
    )


def _checked_scalar(net: SumNetwork, code: ScalarLinearCode) -> ScalarLinearCode:
    if not (verify_transfer(net, code) and verify_exhaustive(net, code)):
        raise RuntimeError("constructed code failed verification")
    return code


def search_scalar(
    net: SumNetwork,
    field: PrimeField,
    budget: SearchBudget | None = None,
    xor_only: bool = False,
) -> SearchResult:
    """Find a scalar linear code solving ``net`` over ``field``.

    XOR codes (coefficients 0, +1, -1) are tried first. Unless ``xor_only``,
    a complete search over all linear codes follows when that fails.
    """
    budget = budget or SearchBudget()
    coeffs = budget.coefficient_set if budget.coefficient_set is not None else (0, *field.signs())
    tracker = _Budget(budget)
    code = _enumerate_restricted(net, field, coeffs, tracker)
    if code is not None:
        return SearchResult(_checked_scalar(net, code), True, tracker.explored, "xor" if budget.coefficient_set is None else "restricted")
    if xor_only or tracker.exhausted:
        return SearchResult(None, not tracker.exhausted, tracker.explored, "xor")
    rows = _subspace_search(net, field, 1, 1, tracker)
    if rows is None:
        return SearchResult(None, not tracker.exhausted, tracker.explored, "linear")
    code = _to_scalar(_realize(net, field, 1, 1, rows))
    return SearchResult(_checked_scalar(net, code), True, tracker.explored, "linear")


def search_fractional(
    net: SumNetwork,
    field: PrimeField,
    k: int,
    n: int,
    budget: SearchBudget | None = None,
    prune: bool = True,
) -> SearchResult:
    """Find a (k, n) fractional linear code, i.e. rate k/n."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    tracker = _Budget(budget or SearchBudget())
    rows = _subspace_search(net, field, k, n, tracker, prune=prune)
    if rows is None:
        return SearchResult(None, not tracker.exhausted, tracker.explored, "subspace")
    code = _realize(net, field, k, n, rows)
    if not verify_fractional(net, code):
        raise RuntimeError("constructed fractional code failed verification")
    return SearchResult(code, True, tracker.explored, "subspace")


# ---------------------------------------------------------------------------
# nonsolvable networks: the two-edge cut

def cut_bound_check(net: SumNetwork, witness: WitnessPair, k: int, n: int) -> bool:
    """Whether rate k/n survives the cut {e1, e2} in front of t3.

    Everything t3 hears passes through e1 and e2, which carry |F|^(2n)
    distinct symbol pairs, while t3 can be shown to pin down all three
    messages, |F|^(3k) possibilities. So a (k, n) code needs 2n >= 3k.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    if not check_theorem1(net, witness.e1, witness.e2, witness.labeling):
        raise InvalidWitness("edge pair does not meet the nonsolvability conditions")
    return Fraction(k, n) <= Fraction(2, 3)


def cut_bound_explanation(k: int, n: int) -> str:
    ok = 2 * n >= 3 * k
    rel = ">=" if ok else "<"
    return (
        f"cut {{e1, e2}} carries |F|^{2 * n} symbol pairs {rel} |F|^{3 * k} message triples "
        f"needed at t3; rate {Fraction(k, n)} {'is' if ok else 'is not'} within 2/3"
    )


# ---------------------------------------------------------------------------
# GF(2)-obstructed networks: explicit scheme over any larger prime field

@dataclass(frozen=True)
class PathSet:
    """Edge lists of the routes the explicit scheme uses (labelled nodes)."""

    q1: tuple[EdgeId, ...]
    q2: tuple[EdgeId, ...]
    r1: tuple[EdgeId, ...]
    r2: tuple[EdgeId, ...]
    trunks: dict[str, tuple[EdgeId, ...]] = field(default_factory=dict)

    def cross_edges(self) -> set[EdgeId]:
        return set(self.q1) | set(self.q2) | set(self.r1) | set(self.r2)

    def all_edges(self) -> set[EdgeId]:
        out = self.cross_edges()
        for t in self.trunks.values():
            out |= set(t)
        return out


def theorem2_paths(net: SumNetwork, witness: WitnessPair) -> PathSet:
    """Shortest routes for the explicit scheme; raises NoValidPaths if one is missing."""
    lab = witness.labeling
    e1, e2 = net.edge(witness.e1), net.edge(witness.e2)
    s = {i: lab.s(net, i) for i in (1, 2, 3)}
    t = {j: lab.t(net, j) for j in (1, 2, 3)}
    both = {e1.id, e2.id}

    def route(name: str, a: int, b: int) -> tuple[EdgeId, ...]:
        path = shortest_path(net, a, b, avoid=both)
        if path is None:
            raise NoValidPaths(f"no {name} route avoiding the witness edges")
        return tuple(path)

    trunks = {
        "s1->tail(e1)": route("s1->tail(e1)", s[1], e1.tail),
        "s3->tail(e1)": route("s3->tail(e1)", s[3], e1.tail),
        "s3->tail(e2)": route("s3->tail(e2)", s[3], e2.tail),
        "s2->tail(e2)": route("s2->tail(e2)", s[2], e2.tail),
        "head(e1)->t1": route("head(e1)->t1", e1.head, t[1]),
        "head(e1)->t3": route("head(e1)->t3", e1.head, t[3]),
        "head(e2)->t2": route("head(e2)->t2", e2.head, t[2]),
        "head(e2)->t3": route("head(e2)->t3", e2.head, t[3]),
    }
    return PathSet(
        q1=route("Q1 (s1->t1)", s[1], t[1]),
        q2=route("Q2 (s2->t2)", s[2], t[2]),
        r1=route("R1 (s1->t2)", s[1], t[2]),
        r2=route("R2 (s2->t1)", s[2], t[1]),
        trunks=trunks,
    )


def _reach_within(net: SumNetwork, edges: set[EdgeId], start: int) -> set[EdgeId]:
    """Edges of ``edges`` reachable from node ``start`` using only ``edges``."""
    seen_nodes = {start}
    hit: set[EdgeId] = set()
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for eid in net._out[v]:
            if eid in edges and eid not in hit:
                hit.add(eid)
                h = net.edge_map[eid].head
                if h not in seen_nodes:
                    seen_nodes.add(h)
                    frontier.append(h)
    return hit


def construct_theorem2(
    net: SumNetwork,
    witness: WitnessPair,
    field: PrimeField,
    alpha: FieldElement | int | None = None,
) -> ScalarLinearCode:
    """Explicit code for a GF(2)-obstructed network over GF(p), p >= 3.

    e1 carries x1 + a*x3 and e2 carries x3 + b*x2; the routes s1/s2 -> t1/t2
    that avoid them deliver x2 + g*x1 to t1 and t2, with b = 1/(1-a) and
    g = 1 - 1/a. The terminals then decode
      t3: (x1 + a*x3) + (1/b)(x3 + b*x2)
      t1: (x2 + g*x1) + (1/a)(x1 + a*x3)
      t2: (1/g)(x2 + g*x1) + (x3 + b*x2).
    Edges off the chosen routes carry nothing. Where routes overlap, an edge
    carries the weighted sum of the streams that reach it, scaled for the one
    terminal all of them are headed to.
    """
    if alpha is None:
        alpha = gf.default_alpha(field)
    beta, gamma_ = gf.theorem2_constants(field, alpha)
    a = alpha.value if isinstance(alpha, FieldElement) else alpha % field.p
    b, g = beta.value, gamma_.value
    p = field.p
    if not check_theorem2(net, witness.e1, witness.e2, witness.labeling):
        raise InvalidWitness("edge pair does not meet the GF(2)-obstruction conditions")
    paths = theorem2_paths(net, witness)
    lab = witness.labeling
    e1, e2 = witness.e1, witness.e2

    def unit(i: int) -> tuple[int, ...]:
        pos = lab.source_perm[i - 1]
        return tuple(int(q == pos) for q in range(3))

    def comb(*terms: tuple[int, tuple[int, ...]]) -> tuple[int, ...]:
        return tuple(sum(c * v[q] for c, v in terms) % p for q in range(3))

    X1, X2, X3 = unit(1), unit(2), unit(3)
    A = comb((1, X1), (a, X3))
    B = comb((1, X3), (b, X2))
    C = comb((g, X1), (1, X2))
    inv = field.inv_int

    used = paths.all_edges() | {e1, e2}
    body = used - {e1, e2}
    starts = {"x1": lab.s(net, 1), "x2": lab.s(net, 2), "x3": lab.s(net, 3),
              "A": net.edge(e1).head, "B": net.edge(e2).head}
    atoms_of: dict[EdgeId, set[str]] = {eid: set() for eid in body}
    for atom, node in starts.items():
        for eid in _reach_within(net, body, node):
            atoms_of[eid].add(atom)

    single = {"x1": X1, "x2": X2, "x3": X3, "A": A, "B": B}

    def content(atoms: set[str]) -> tuple[int, ...]:
        key = frozenset(atoms)
        if len(key) == 1:
            return single[next(iter(key))]
        if key == {"x1", "x3"}:
            return A
        if key == {"x2", "x3"}:
            return B
        if key == {"x1", "x2"}:
            return C
        if key == {"A", "B"}:
            return comb((1, A), (inv(b), B))
        if "A" in key and key <= {"A", "x1", "x2"}:
            # headed for t1
            terms = [(inv(a), A)] + [(g, X1)] * ("x1" in key) + [(1, X2)] * ("x2" in key)
            return comb(*terms)
        if "B" in key and key <= {"B", "x1", "x2"}:
            # headed for t2
            terms = [(1, B)] + [(1, X1)] * ("x1" in key) + [(inv(g), X2)] * ("x2" in key)
            return comb(*terms)
        raise NoValidPaths(f"routes mix streams {sorted(key)} on one edge")

    zero = (0, 0, 0)
    carried: dict[EdgeId, tuple[int, ...]] = {e1: A, e2: B}
    for eid in body:
        carried[eid] = content(atoms_of[eid]) if atoms_of[eid] else zero

    def in_vector(src, tail: int) -> tuple[int, ...]:
        if src == SOURCE:
            return tuple(int(s == tail) for s in net.sources)
        return carried.get(src, zero)

    edge_maps: dict[EdgeId, tuple[int, ...]] = {}
    for e in net.edges:
        ins = edge_inputs(net, e.id)
        want = carried.get(e.id, zero)
        if want == zero:
            edge_maps[e.id] = (0,) * len(ins)
            continue
        sol = gf.solve_combination([in_vector(src, e.tail) for src in ins], want, p)
        if sol is None:
            raise NoValidPaths(f"edge {net.edge_names[e.id]} cannot form its symbol from its inputs")
        edge_maps[e.id] = sol
    decoders = []
    for j in range(3):
        ins = terminal_inputs(net, j)
        sol = gf.solve_combination([carried.get(e, zero) for e in ins], (1, 1, 1), p) if ins else None
        if sol is None:
            raise NoValidPaths(f"terminal {net.node_names[net.terminals[j]]} cannot decode")
        decoders.append(sol)
    return _checked_scalar(net, ScalarLinearCode(field, edge_maps, tuple(decoders)))
