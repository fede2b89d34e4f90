"""Solvability classification of connected 3-source 3-terminal sum-networks.

Two edge-pair conditions decide everything: one pattern certifies that no
field admits a solution (capacity exactly 2/3), a second certifies that only
GF(2) fails. Networks matching neither are solvable over every field.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator

from . import analysis
from .errors import NotThreeByThree, UnknownEdge
from .multigraph import EdgeId, SumNetwork

PERMS: tuple[tuple[int, int, int], ...] = tuple(permutations(range(3)))  # type: ignore[assignment]


@dataclass(frozen=True)
class Labeling:
    """``source_perm[i]`` is the position in ``net.sources`` of labelled source i+1."""

    source_perm: tuple[int, int, int] = (0, 1, 2)
    terminal_perm: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self) -> None:
        if sorted(self.source_perm) != [0, 1, 2] or sorted(self.terminal_perm) != [0, 1, 2]:
            raise ValueError("labeling must be a pair of permutations of (0, 1, 2)")

    def s(self, net: SumNetwork, i: int) -> int:
        """Node of labelled source i (1-based)."""
        return net.sources[self.source_perm[i - 1]]

    def t(self, net: SumNetwork, j: int) -> int:
        return net.terminals[self.terminal_perm[j - 1]]

    def describe(self) -> str:
        sp = " ".join(str(i + 1) for i in self.source_perm)
        tp = " ".join(str(j + 1) for j in self.terminal_perm)
        return f"sources ({sp}) terminals ({tp})"


def all_labelings() -> Iterator[Labeling]:
    for sp in PERMS:
        for tp in PERMS:
            yield Labeling(sp, tp)


class Variant(str, enum.Enum):
    NOT_CONNECTED = "NotConnected"
    NONSOLVABLE = "Nonsolvable"
    SOLVABLE_EXCEPT_F2 = "SolvableExceptF2"
    SOLVABLE_ALL_FIELDS = "SolvableAllFields"


@dataclass(frozen=True)
class WitnessPair:
    e1: EdgeId
    e2: EdgeId
    labeling: Labeling


@dataclass(frozen=True)
class SolvabilityClass:
    variant: Variant
    witness: WitnessPair | None = None
    # lower bound on capacity; exact for 0 and 2/3
    capacity: Fraction = Fraction(1)
    reason: str = ""

    def __post_init__(self) -> None:
        needs = self.variant in (Variant.NONSOLVABLE, Variant.SOLVABLE_EXCEPT_F2)
        if needs != (self.witness is not None):
            raise ValueError(f"{self.variant.value} {'needs' if needs else 'takes no'} witness")

    @property
    def capacity_note(self) -> str:
        if self.variant in (Variant.NOT_CONNECTED, Variant.NONSOLVABLE):
            return str(self.capacity)
        return ">= 1"


def _require_3s3t(net: SumNetwork) -> None:
    if not net.is_3s3t:
        raise NotThreeByThree(f"need 3 sources and 3 terminals, got {len(net.sources)}/{len(net.terminals)}")


def _reaches(net: SumNetwork, sources, terminals) -> bool:
    desc = net.descendants_mask
    return any(desc[s] >> t & 1 for s in sources for t in terminals)


def check_theorem1(net: SumNetwork, e1: EdgeId, e2: EdgeId, lab: Labeling) -> bool:
    """All six nonsolvability conditions for edges (e1, e2) under ``lab``."""
    _require_3s3t(net)
    net.edge(e1), net.edge(e2)
    if e1 == e2:
        return False
    s = lambda i: lab.s(net, i)  # noqa: E731
    t = lambda j: lab.t(net, j)  # noqa: E731
    n1 = net.remove_edges([e1])
    n2 = net.remove_edges([e2])
    n12 = net.remove_edges([e1, e2])
    return (
        not _reaches(n1, [s(1)], [t(3)])
        and not _reaches(n1, [s(3)], [t(1)])
        and not _reaches(n2, [s(2)], [t(3)])
        and not _reaches(n2, [s(2), s(3)], [t(2)])
        and not _reaches(n12, [s(3)], [t(3)])
        and not net.edge_precedes(e1, e2)
        and not net.edge_precedes(e2, e1)
    )


def check_theorem2(net: SumNetwork, e1: EdgeId, e2: EdgeId, lab: Labeling) -> bool:
    """All four GF(2)-only-failure conditions for edges (e1, e2) under ``lab``."""
    _require_3s3t(net)
    net.edge(e1), net.edge(e2)
    if e1 == e2:
        return False
    sp, tp = lab.source_perm, lab.terminal_perm
    # (labelled i, labelled j) -> positional pair
    want1 = {(sp[0], tp[2]), (sp[2], tp[0])}
    want2 = {(sp[1], tp[2]), (sp[2], tp[1])}
    if analysis.disconnect_set(net, e1).pairs != want1:
        return False
    if analysis.disconnect_set(net, e2).pairs != want2:
        return False
    n12 = net.remove_edges([e1, e2])
    return (
        not _reaches(n12, [lab.s(net, 3)], [lab.t(net, 3)])
        and not net.edge_precedes(e1, e2)
        and not net.edge_precedes(e2, e1)
    )


class _Tables:
    """Connectivity of the network with one or two edges deleted, memoised."""

    def __init__(self, net: SumNetwork) -> None:
        self.net = net
        self.single = {e.id: analysis.connectivity(net.remove_edges([e.id])) for e in net.edges}
        self.base = analysis.connected_pairs(net)
        self.dsets = {
            eid: frozenset((i, j) for i in range(3) for j in range(3) if (i, j) in self.base and not c[i][j])
            for eid, c in self.single.items()
        }
        self._pairs: dict[tuple[EdgeId, EdgeId], list[list[bool]]] = {}

    def double(self, a: EdgeId, b: EdgeId) -> list[list[bool]]:
        key = (a, b) if a < b else (b, a)
        if key not in self._pairs:
            self._pairs[key] = analysis.connectivity(self.net.remove_edges(key))
        return self._pairs[key]


def _thm1_fast(tab: _Tables, e1: EdgeId, e2: EdgeId, lab: Labeling, incomparable: bool) -> bool:
    sp, tp = lab.source_perm, lab.terminal_perm
    c1, c2 = tab.single[e1], tab.single[e2]
    if c1[sp[0]][tp[2]] or c1[sp[2]][tp[0]]:
        return False
    if c2[sp[1]][tp[2]] or c2[sp[1]][tp[1]] or c2[sp[2]][tp[1]]:
        return False
    if not incomparable:
        return False
    return not tab.double(e1, e2)[sp[2]][tp[2]]


def _thm2_fast(tab: _Tables, e1: EdgeId, e2: EdgeId, lab: Labeling, incomparable: bool) -> bool:
    sp, tp = lab.source_perm, lab.terminal_perm
    if tab.dsets[e1] != {(sp[0], tp[2]), (sp[2], tp[0])}:
        return False
    if tab.dsets[e2] != {(sp[1], tp[2]), (sp[2], tp[1])}:
        return False
    if not incomparable:
        return False
    return not tab.double(e1, e2)[sp[2]][tp[2]]


def find_witness(net: SumNetwork, which: int) -> WitnessPair | None:
    """First (e1, e2, labeling) meeting theorem ``which`` (1 or 2).

    Order: e1 ascending, e2 ascending, then labelings lexicographically.
    """
    _require_3s3t(net)
    tab = _Tables(net)
    check = _thm1_fast if which == 1 else _thm2_fast
    labs = list(all_labelings())
    ids = [e.id for e in net.edges]
    for e1 in ids:
        for e2 in ids:
            if e1 == e2:
                continue
            incomparable = not net.edge_precedes(e1, e2) and not net.edge_precedes(e2, e1)
            if not incomparable:
                continue
            for lab in labs:
                if check(tab, e1, e2, lab, incomparable):
                    return WitnessPair(e1, e2, lab)
    return None


def classify(net: SumNetwork, shortcuts: bool = True) -> SolvabilityClass:
    """Decide the solvability class of a 3-source 3-terminal network.

    With ``shortcuts`` the hub-node, endpoint-path and kappa tests may settle
    the answer before the pair search runs; without them the full search
    always runs (used to cross-check the shortcuts).
    """
    _require_3s3t(net)
    if not analysis.is_connected_sum_network(net):
        return SolvabilityClass(Variant.NOT_CONNECTED, capacity=Fraction(0), reason="some source-terminal pair is unconnected")
    if shortcuts:
        if analysis.has_endpoint_path(net):
            return SolvabilityClass(Variant.SOLVABLE_ALL_FIELDS, reason="path between two sources or two terminals")
        if analysis.find_hub_node(net) is not None:
            return SolvabilityClass(Variant.SOLVABLE_ALL_FIELDS, reason="hub node")
        k = analysis.kappa(net)
        if k not in (2, 3):
            return SolvabilityClass(Variant.SOLVABLE_ALL_FIELDS, reason=f"kappa = {k}")
    w = find_witness(net, 1)
    if w is not None:
        return SolvabilityClass(Variant.NONSOLVABLE, w, Fraction(2, 3), reason="nonsolvability edge pair")
    w = find_witness(net, 2)
    if w is not None:
        return SolvabilityClass(Variant.SOLVABLE_EXCEPT_F2, w, reason="GF(2) obstruction edge pair")
    return SolvabilityClass(Variant.SOLVABLE_ALL_FIELDS, reason="no witness pair")


def verify_witness(net: SumNetwork, cls: SolvabilityClass) -> bool:
    """Re-check a returned witness from scratch."""
    if cls.witness is None:
        return cls.variant in (Variant.SOLVABLE_ALL_FIELDS, Variant.NOT_CONNECTED)
    w = cls.witness
    try:
        if cls.variant is Variant.NONSOLVABLE:
            return check_theorem1(net, w.e1, w.e2, w.labeling)
        return check_theorem2(net, w.e1, w.e2, w.labeling)
    except UnknownEdge:
        return False
