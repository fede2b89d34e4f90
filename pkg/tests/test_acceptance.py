"""Release gate: the ten acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (visible in
``pytest -v`` output) and then asserts the same outcome.
"""

import random
import time
from functools import lru_cache
from fractions import Fraction
from itertools import product

import pytest

import bruteforce as bf
from sumnet import analysis, catalog, classifier, constructor, gf, netcode
from sumnet.classifier import Variant
from sumnet.gf import PrimeField
from sumnet.multigraph import Edge, SumNetwork, mincut
from sumnet.netcode import ScalarLinearCode, edge_inputs, terminal_inputs
from sumnet.oracle import GeneratorConfig, brute_force_solvable, generate_random

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


@lru_cache(maxsize=None)
def corpus():
    """Seeded random 3s/3t networks inside the oracle's slot caps."""
    nets = []
    for seed in range(400):
        nets.append(generate_random(GeneratorConfig(node_budget=10, edge_budget=16, seed=seed,
                                                    family="bridged", max_slots=10)))
    for seed in range(200):
        nets.append(generate_random(GeneratorConfig(node_budget=9, edge_budget=12, seed=seed,
                                                    family="layered", max_slots=10)))
    for seed in range(40):
        nets.append(generate_random(GeneratorConfig(node_budget=9, edge_budget=10, seed=seed,
                                                    ensure_connected=False, max_slots=10)))
    return tuple(nets)


@lru_cache(maxsize=None)
def solved():
    """(net, variant, GF(2) code, GF(3) code) for the whole corpus."""
    return tuple((net, classifier.classify(net).variant,
                  brute_force_solvable(net, F2), brute_force_solvable(net, F3)) for net in corpus())


# ---------------------------------------------------------------------------

def test_c1_kappa_of_bottleneck(report):
    net = catalog.bottleneck()
    t0 = time.perf_counter()
    k = analysis.kappa(net)
    dt = time.perf_counter() - t0
    report(1, k == 9 and dt < 1.0, f"kappa={k} (expected 9) in {dt:.4f}s")


def _theorem1_conditions_by_dfs(net, e1, e2):
    """Conditions 1-6 for the identity labeling, from plain DFS."""
    s = [net.sources[i] for i in range(3)]
    t = [net.terminals[j] for j in range(3)]

    def cut(removed, srcs, term):
        edges = bf.edge_list(net, removed)
        return all(term not in bf.dfs_reach(edges, x) for x in srcs)

    a, b = net.edge(e1), net.edge(e2)
    full = bf.edge_list(net)
    return [
        cut([e1], [s[0]], t[2]) and cut([e1], [s[2]], t[0]),
        cut([e2], [s[1]], t[2]),
        cut([e2], [s[1], s[2]], t[1]),
        cut([e1, e2], [s[2]], t[2]),
        a.head != b.tail and b.tail not in bf.dfs_reach(full, a.head),
        b.head != a.tail and a.tail not in bf.dfs_reach(full, b.head),
    ]


def test_c2_nonsolvable_and_two_thirds(report):
    t0 = time.perf_counter()
    net = catalog.nonsolvable_witness()
    e1, e2 = net.edge_id("e1"), net.edge_id("e2")
    conds = _theorem1_conditions_by_dfs(net, e1, e2)
    cls = classifier.classify(net)
    oracle = {f.p: brute_force_solvable(net, f) for f in (F2, F3, F5)}
    frac = constructor.search_fractional(net, F2, 2, 3)
    frac_ok = frac.found and netcode.verify_fractional(net, frac.code, "exhaustive")
    rates = [(k, n) for k in range(1, 13) for n in range(1, 13)]
    bound_ok = all(constructor.cut_bound_check(net, cls.witness, k, n) == (Fraction(k, n) <= Fraction(2, 3))
                   for k, n in rates)
    dt = time.perf_counter() - t0
    ok = (all(conds) and len(net.edges) <= 12 and cls.variant is Variant.NONSOLVABLE
          and cls.capacity == Fraction(2, 3) and all(c is None for c in oracle.values())
          and frac_ok and bound_ok and dt < 300)
    report(2, ok, f"conditions={conds} class={cls.variant.value} capacity={cls.capacity_note} "
                  f"oracle codes over GF(2,3,5)={[c is not None for c in oracle.values()]} "
                  f"(2,3) code verified={frac_ok} cut bound={bound_ok} in {dt:.1f}s")


def test_c3_solvable_except_f2(report):
    t0 = time.perf_counter()
    net = catalog.except_f2_witness()
    cls = classifier.classify(net)
    f2 = brute_force_solvable(net, F2)
    built = 0
    failed = []
    for p in (3, 5, 7):
        field = PrimeField(p)
        for a in range(2, p):
            code = constructor.construct_theorem2(net, cls.witness, field, a)
            if netcode.verify_exhaustive(net, code) and netcode.verify_transfer(net, code):
                built += 1
            else:
                failed.append((p, a))
    dt = time.perf_counter() - t0
    ok = cls.variant is Variant.SOLVABLE_EXCEPT_F2 and f2 is None and not failed and built == 1 + 3 + 5 and dt < 120
    report(3, ok, f"class={cls.variant.value} GF(2) code={f2 is not None} "
                  f"verified codes={built}/9 failures={failed} in {dt:.2f}s")


def test_c4_decoding_identities(report):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for p in (3, 5, 7):
        F = PrimeField(p)
        for a in range(2, p):
            alpha = F(a)
            beta, gamma = gf.theorem2_constants(F, alpha)
            for x1, x2, x3 in product(F, repeat=3):
                total = x1 + x2 + x3
                lhs = [
                    (x1 + alpha * x3) + beta.inverse() * (x3 + beta * x2),
                    (x2 + gamma * x1) + alpha.inverse() * (x1 + alpha * x3),
                    gamma.inverse() * (x2 + gamma * x1) + (x3 + beta * x2),
                ]
                checked += 1
                if any(v != total for v in lhs):
                    bad.append((p, a, x1.value, x2.value, x3.value))
    dt = time.perf_counter() - t0
    report(4, not bad and dt < 1.0, f"{checked} (p, alpha, x) cases, {len(bad)} failures in {dt:.3f}s")


def test_c5_classifier_matches_oracle(report):
    t0 = time.perf_counter()
    rows = solved()
    bad = []
    for i, (net, variant, c2, c3) in enumerate(rows):
        expect2 = variant is Variant.SOLVABLE_ALL_FIELDS
        expect3 = variant in (Variant.SOLVABLE_ALL_FIELDS, Variant.SOLVABLE_EXCEPT_F2)
        if (c2 is not None) != expect2 or (c3 is not None) != expect3:
            bad.append(i)
        for c in (c2, c3):
            if c is not None and not netcode.verify_exhaustive(net, c):
                bad.append(i)
    counts = {}
    for _, v, _, _ in rows:
        counts[v.value] = counts.get(v.value, 0) + 1
    dt = time.perf_counter() - t0
    report(5, len(rows) >= 500 and not bad,
           f"{len(rows)} nets {counts}, disagreements={bad[:10]} in {dt:.1f}s")


def test_c6_shortcuts_imply_all_fields(report):
    violations = []
    n_kappa = n_hub = 0
    for i, net in enumerate(corpus()):
        if not analysis.is_connected_sum_network(net):
            continue
        fast = classifier.classify(net).variant
        full = classifier.classify(net, shortcuts=False).variant
        if fast is not full:
            violations.append((i, "shortcut changed the class"))
        if analysis.kappa(net) not in (2, 3):
            n_kappa += 1
            if full is not Variant.SOLVABLE_ALL_FIELDS:
                violations.append((i, "kappa"))
        if analysis.find_hub_node(net) is not None:
            n_hub += 1
            if full is not Variant.SOLVABLE_ALL_FIELDS:
                violations.append((i, "hub"))
    report(6, not violations,
           f"{n_kappa} nets with kappa outside {{2,3}}, {n_hub} with a hub node, violations={violations[:10]}")


def test_c7_reversal(report):
    violations = []
    reversed_codes = xor_codes = 0
    for i, (net, variant, c2, c3) in enumerate(solved()):
        rev = net.reverse()
        if classifier.classify(rev).variant is not variant or analysis.kappa(rev) != analysis.kappa(net):
            violations.append((i, "class or kappa"))
        codes = [c for c in (c2, c3) if c is not None]
        if variant is not Variant.NONSOLVABLE and variant is not Variant.NOT_CONNECTED:
            xor = constructor.search_scalar(net, F5, xor_only=True)
            if xor.found:
                codes.append(xor.code)
        for code in codes:
            rc = netcode.reverse_code(net, code)
            reversed_codes += 1
            xor_codes += netcode.is_xor_code(code)
            if not netcode.verify_exhaustive(rev, rc) or netcode.is_xor_code(rc) != netcode.is_xor_code(code):
                violations.append((i, "reverse code"))
    report(7, not violations,
           f"{len(solved())} nets, {reversed_codes} codes reversed ({xor_codes} XOR), violations={violations[:10]}")


def _random_code(net, field, rng):
    maps = {e.id: tuple(rng.randrange(field.p) for _ in edge_inputs(net, e.id)) for e in net.edges}
    decs = tuple(tuple(rng.randrange(field.p) for _ in terminal_inputs(net, j)) for j in range(3))
    return ScalarLinearCode(field, maps, decs)


def _perturb(code, rng):
    maps = dict(code.edge_maps)
    live = [e for e in sorted(maps) if maps[e]]
    e = rng.choice(live)
    row = list(maps[e])
    i = rng.randrange(len(row))
    row[i] = (row[i] + rng.randrange(1, code.field.p)) % code.field.p
    maps[e] = tuple(row)
    return ScalarLinearCode(code.field, maps, code.terminal_decoders)


def test_c8_verifier_equivalence(report):
    rng = random.Random(8)
    rows = solved()
    pairs = disagreements = passing = 0
    while pairs < 1000:
        net, _, c2, c3 = rows[pairs % len(rows)]
        field = F2 if pairs % 2 == 0 else F3
        known = c2 if field is F2 else c3
        kind = rng.randrange(3)
        if known is not None and kind == 0:
            code = known
        elif known is not None and kind == 1:
            code = _perturb(known, rng)
        else:
            code = _random_code(net, field, rng)
        ex, tr = netcode.verify_exhaustive(net, code), netcode.verify_transfer(net, code)
        disagreements += ex != tr
        passing += ex
        pairs += 1
    report(8, disagreements == 0, f"{pairs} pairs ({passing} passing), {disagreements} disagreements")


def test_c9_parallel_copies_reduce_kappa(report):
    checked, violations = 0, []
    for net in corpus():
        rep = analysis.analyze(net)
        if rep.kappa == 0 or any("C" in t for t in rep.abc.values()):
            continue
        chosen = [e for e, t in rep.abc.items() if t & {"A", "B"}]
        after = analysis.kappa(analysis.augment_parallel(net, chosen))
        checked += 1
        if after >= rep.kappa:
            violations.append((rep.kappa, after))
    report(9, checked >= 50 and not violations, f"{checked} nets with kappa > 0 and no C edges, "
                                                f"violations={violations[:10]}")


def _random_dag(rng):
    n = rng.randint(3, 7)
    m = rng.randint(1, 12)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [Edge(i, *rng.choice(pairs)) for i in range(m)]
    return SumNetwork(range(n), edges, [0], [n - 1])


def test_c10_menger(report):
    rng = random.Random(10)
    nets = [_random_dag(rng) for _ in range(60)]
    nets += [generate_random(GeneratorConfig(node_budget=9, edge_budget=12, seed=s)) for s in range(40)]
    checked, bad = 0, []
    for i, net in enumerate(nets):
        assert len(net.edges) <= 12
        for u in net.nodes:
            for v in net.nodes:
                if u == v:
                    continue
                checked += 1
                if mincut(net, [u], [v]) != bf.max_disjoint_paths(net, u, v):
                    bad.append((i, u, v))
    report(10, len(nets) == 100 and not bad, f"{len(nets)} nets, {checked} ordered node pairs, "
                                             f"disagreements={bad[:10]}")
