from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gen, random_3s3t
from sumnet import analysis, catalog, netcode, oracle
from sumnet.constructor import search_scalar
from sumnet.errors import GenerationFailed, SearchSpaceTooLarge
from sumnet.gf import PrimeField
from sumnet.multigraph import mincut
from sumnet.netcode import ScalarLinearCode, edge_inputs, terminal_inputs
from sumnet.oracle import GeneratorConfig, brute_force_solvable, count_slots, generate_random

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def test_nine_direct_all_ones(nine):
    code = brute_force_solvable(nine, F2)
    assert all(c == 1 for c in code.coefficients())


def test_witness_nets(thm1_net, thm2_net):
    for f in (F2, F3, F5):
        assert brute_force_solvable(thm1_net, f) is None
    assert brute_force_solvable(thm2_net, F2) is None
    code = brute_force_solvable(thm2_net, F3)
    assert code is not None and netcode.verify_exhaustive(thm2_net, code)


def test_search_space_cap(thm2_net):
    with pytest.raises(SearchSpaceTooLarge) as exc:
        brute_force_solvable(thm2_net, F2, cap=1)
    assert exc.value.slots == count_slots(thm2_net) > 1
    assert oracle.default_cap(2) == 14 and oracle.default_cap(3) == 10 and oracle.default_cap(5) == 6


def _vectors(net, field, maps):
    """Per-edge global vectors for local maps, from scratch."""
    vec = {}
    for e in net.edge_order:
        tail = net.edge(e).tail
        acc = [0, 0, 0]
        for src, c in zip(edge_inputs(net, e), maps[e]):
            v = [int(s == tail) for s in net.sources] if src == netcode.SOURCE else vec[src]
            acc = [(x + c * y) % field.p for x, y in zip(acc, v)]
        vec[e] = acc
    return vec


def _least_unnormalized(net, field):
    """Reference: walk every full coefficient assignment in processing order."""
    order = list(net.edge_order)
    widths = [len(edge_inputs(net, e)) for e in order]
    for flat in product(range(field.p), repeat=sum(widths)):
        maps, i = {}, 0
        for e, w in zip(order, widths):
            maps[e] = flat[i:i + w]
            i += w
        vec = _vectors(net, field, maps)
        decs = []
        for j in range(3):
            ins = terminal_inputs(net, j)
            for cs in product(range(field.p), repeat=len(ins)):
                got = [sum(c * vec[e][q] for c, e in zip(cs, ins)) % field.p for q in range(3)]
                if got == [1, 1, 1]:
                    decs.append(cs)
                    break
        if len(decs) == 3:
            return ScalarLinearCode(field, maps, tuple(decs))
    return None


# small nets whose full (unnormalized) slot count stays at 12 or below
SMALL = [(8, 10, s) for s in (2, 4, 8, 9, 20, 21)] + [(9, 10, s) for s in (4, 7, 14, 16, 19, 21, 22, 28)]


@pytest.mark.parametrize("nodes,edges,seed", SMALL)
def test_unnormalized_is_lexicographically_least(nodes, edges, seed):
    net = generate_random(GeneratorConfig(node_budget=nodes, edge_budget=edges, seed=seed))
    assert count_slots(net, normalize=False) <= 12
    got = brute_force_solvable(net, F2, cap=14, normalize=False)
    ref = _least_unnormalized(net, F2)
    assert (got is None) == (ref is None)
    if got is not None:
        assert dict(got.edge_maps) == dict(ref.edge_maps) and got.terminal_decoders == ref.terminal_decoders


@given(random_3s3t(max_slots=8))
@settings(max_examples=40)
def test_normalization_preserves_existence(net):
    for f in (F2, F3):
        full = count_slots(net, normalize=False)
        if f.p ** full > 3 ** 12:
            continue
        a = brute_force_solvable(net, f)
        b = brute_force_solvable(net, f, cap=full, normalize=False)
        assert (a is None) == (b is None)


@given(random_3s3t())
@settings(max_examples=40)
def test_f2_solvable_implies_xor_over_f3(net):
    if brute_force_solvable(net, F2) is not None:
        assert search_scalar(net, F3, xor_only=True).found


def test_generator_determinism():
    cfg = GeneratorConfig(node_budget=10, edge_budget=14, seed=7, family="bridged")
    assert generate_random(cfg).structure() == generate_random(cfg).structure()
    assert generate_random(cfg).edge_names == generate_random(cfg).edge_names


@given(st.integers(0, 100_000), st.sampled_from(["layered", "bridged"]))
@settings(max_examples=30)
def test_generator_postconditions(seed, family):
    net = gen(seed, family)
    assert analysis.is_connected_sum_network(net)
    assert all(not net.in_edges(s) for s in net.sources)
    assert all(not net.out_edges(t) for t in net.terminals)
    assert net.is_3s3t and len(net.topological_order) == len(net.nodes)
    assert count_slots(net) <= 10


def test_kappa_zero_means_two_connected():
    net = generate_random(GeneratorConfig(node_budget=9, edge_budget=24, seed=1, ensure_kappa=0))
    assert analysis.kappa(net) == 0
    for s in net.sources:
        for t in net.terminals:
            assert mincut(net, [s], [t]) >= 2


def test_generator_errors():
    with pytest.raises(ValueError):
        GeneratorConfig(node_budget=5)
    with pytest.raises(ValueError):
        GeneratorConfig(family="grid")
    with pytest.raises(GenerationFailed):
        generate_random(GeneratorConfig(node_budget=6, edge_budget=6, ensure_kappa=9, max_attempts=20))


def test_catalog_slot_counts():
    assert count_slots(catalog.nonsolvable_witness()) == 4
    assert count_slots(catalog.nine_direct()) == 0
