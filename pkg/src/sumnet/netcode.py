"""Scalar and fractional linear network codes: evaluation and verification.

Every edge reads a fixed, ordered list of inputs: the tail's own source
symbol first (when the tail is a source), then the tail's in-edges in id
order. Terminal decoders read the terminal's in-edges in id order.
Coefficients are ints in ``[0, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from . import gf
from .errors import CodeShapeMismatch, InputCodeInvalid
from .gf import FieldElement, Matrix, PrimeField
from .multigraph import EdgeId, SumNetwork

SOURCE = "source"
Input = str | int

EXHAUSTIVE_STATE_CAP = 729


def edge_inputs(net: SumNetwork, eid: EdgeId) -> tuple[Input, ...]:
    tail = net.edge(eid).tail
    ins: list[Input] = [SOURCE] if tail in net.sources else []
    ins.extend(net._in[tail])
    return tuple(ins)


def terminal_inputs(net: SumNetwork, j: int) -> tuple[EdgeId, ...]:
    return net._in[net.terminals[j]]


@dataclass(frozen=True)
class ScalarLinearCode:
    field: PrimeField
    edge_maps: Mapping[EdgeId, tuple[int, ...]]
    terminal_decoders: tuple[tuple[int, ...], ...]

    def coefficients(self) -> list[int]:
        out = [c for eid in sorted(self.edge_maps) for c in self.edge_maps[eid]]
        out.extend(c for dec in self.terminal_decoders for c in dec)
        return out

    def as_fractional(self) -> "FractionalLinearCode":
        return FractionalLinearCode(
            self.field,
            1,
            1,
            {e: tuple(((c,),) for c in cs) for e, cs in self.edge_maps.items()},
            tuple(tuple(((c,),) for c in dec) for dec in self.terminal_decoders),
        )


@dataclass(frozen=True)
class FractionalLinearCode:
    """A (k, n) code: sources emit k-blocks, every edge carries an n-block.

    ``edge_maps[e][i]`` is an n x k matrix for a source input and n x n for an
    edge input; ``terminal_decoders[j][i]`` is k x n.
    """

    field: PrimeField
    k: int
    n: int
    edge_maps: Mapping[EdgeId, tuple[Matrix, ...]]
    terminal_decoders: tuple[tuple[Matrix, ...], ...]

    @property
    def rate(self):
        from fractions import Fraction

        return Fraction(self.k, self.n)


def check_shape(net: SumNetwork, code: ScalarLinearCode | FractionalLinearCode) -> None:
    if set(code.edge_maps) != {e.id for e in net.edges}:
        raise CodeShapeMismatch("edge maps do not cover exactly the network's edges")
    if len(code.terminal_decoders) != len(net.terminals):
        raise CodeShapeMismatch("one decoder per terminal required")
    frac = isinstance(code, FractionalLinearCode)
    if frac and (code.k < 1 or code.n < 1):
        raise CodeShapeMismatch("block lengths must be positive")
    p = code.field.p

    def ok_matrix(m, rows, cols) -> bool:
        return len(m) == rows and all(len(r) == cols and all(0 <= v < p for v in r) for r in m)

    for e in net.edges:
        ins = edge_inputs(net, e.id)
        coeffs = code.edge_maps[e.id]
        if len(coeffs) != len(ins):
            raise CodeShapeMismatch(f"edge {net.edge_names[e.id]} expects {len(ins)} coefficients, got {len(coeffs)}")
        for src, c in zip(ins, coeffs):
            if frac:
                if not ok_matrix(c, code.n, code.k if src == SOURCE else code.n):
                    raise CodeShapeMismatch(f"bad block on edge {net.edge_names[e.id]}")
            elif not (isinstance(c, int) and 0 <= c < p):
                raise CodeShapeMismatch(f"coefficient {c!r} on edge {net.edge_names[e.id]} is not in GF({p})")
    for j in range(len(net.terminals)):
        ins = terminal_inputs(net, j)
        dec = code.terminal_decoders[j]
        if len(dec) != len(ins):
            raise CodeShapeMismatch(f"terminal {j + 1} expects {len(ins)} decoder coefficients, got {len(dec)}")
        for c in dec:
            if frac:
                if not ok_matrix(c, code.k, code.n):
                    raise CodeShapeMismatch(f"bad decoder block at terminal {j + 1}")
            elif not (isinstance(c, int) and 0 <= c < p):
                raise CodeShapeMismatch(f"decoder coefficient {c!r} is not in GF({p})")


def _as_int(v: FieldElement | int, field: PrimeField) -> int:
    if isinstance(v, FieldElement):
        if v.field != field:
            raise CodeShapeMismatch(f"input from {v.field}, code over {field}")
        return v.value
    return v % field.p


def evaluate(
    net: SumNetwork, code: ScalarLinearCode, inputs: Sequence[FieldElement | int]
) -> tuple[dict[EdgeId, FieldElement], list[FieldElement]]:
    """Push one symbol per source through the network."""
    check_shape(net, code)
    if len(inputs) != len(net.sources):
        raise CodeShapeMismatch(f"need {len(net.sources)} inputs")
    f = code.field
    xs = [_as_int(v, f) for v in inputs]
    sym = _evaluate_ints(net, code, xs)
    outs = [
        f(sum(c * sym[e] for c, e in zip(code.terminal_decoders[j], terminal_inputs(net, j))))
        for j in range(len(net.terminals))
    ]
    return {e: f(v) for e, v in sym.items()}, outs


def _evaluate_ints(net: SumNetwork, code: ScalarLinearCode, xs: Sequence[int]) -> dict[EdgeId, int]:
    p = code.field.p
    sym: dict[EdgeId, int] = {}
    for eid in net.edge_order:
        tail = net.edge_map[eid].tail
        total = 0
        for src, c in zip(edge_inputs(net, eid), code.edge_maps[eid]):
            total += c * (xs[net.sources.index(tail)] if src == SOURCE else sym[src])
        sym[eid] = total % p
    return sym


def first_failure(net: SumNetwork, code: ScalarLinearCode) -> tuple[tuple[int, ...], int] | None:
    """First input tuple (lexicographic) and terminal index where decoding fails."""
    check_shape(net, code)
    p = code.field.p
    for xs in product(range(p), repeat=len(net.sources)):
        sym = _evaluate_ints(net, code, xs)
        want = sum(xs) % p
        for j in range(len(net.terminals)):
            got = sum(c * sym[e] for c, e in zip(code.terminal_decoders[j], terminal_inputs(net, j))) % p
            if got != want:
                return xs, j
    return None


def verify_exhaustive(net: SumNetwork, code: ScalarLinearCode) -> bool:
    """Check every terminal outputs x1 + ... + xl on all |F|^l inputs."""
    return first_failure(net, code) is None


def transfer_vectors(net: SumNetwork, code: ScalarLinearCode) -> dict[EdgeId, tuple[int, ...]]:
    """Global coefficient vector (one entry per source) carried by each edge."""
    check_shape(net, code)
    p = code.field.p
    l = len(net.sources)
    vec: dict[EdgeId, tuple[int, ...]] = {}
    for eid in net.edge_order:
        tail = net.edge_map[eid].tail
        acc = [0] * l
        for src, c in zip(edge_inputs(net, eid), code.edge_maps[eid]):
            if not c:
                continue
            if src == SOURCE:
                acc[net.sources.index(tail)] += c
            else:
                for i, v in enumerate(vec[src]):
                    acc[i] += c * v
        vec[eid] = tuple(a % p for a in acc)
    return vec


def terminal_vectors(net: SumNetwork, code: ScalarLinearCode) -> list[tuple[int, ...]]:
    vec = transfer_vectors(net, code)
    p = code.field.p
    out = []
    for j in range(len(net.terminals)):
        acc = [0] * len(net.sources)
        for c, e in zip(code.terminal_decoders[j], terminal_inputs(net, j)):
            for i, v in enumerate(vec[e]):
                acc[i] += c * v
        out.append(tuple(a % p for a in acc))
    return out


def verify_transfer(net: SumNetwork, code: ScalarLinearCode) -> bool:
    ones = (1,) * len(net.sources)
    return all(v == ones for v in terminal_vectors(net, code))


def is_xor_code(code: ScalarLinearCode) -> bool:
    """Every coefficient is 0, +1 or -1 (0 meaning the input is ignored)."""
    allowed = {0, 1, code.field.p - 1}
    return all(c in allowed for c in code.coefficients())


# ---------------------------------------------------------------------------
# fractional codes

def _source_selector(i: int, l: int, k: int) -> Matrix:
    return tuple(tuple(int(c == i * k + r) for c in range(l * k)) for r in range(k))


def fractional_transfer(net: SumNetwork, code: FractionalLinearCode) -> dict[EdgeId, Matrix]:
    """n x (l*k) global transfer matrix of every edge."""
    check_shape(net, code)
    p, k, n = code.field.p, code.k, code.n
    l = len(net.sources)
    glob: dict[EdgeId, Matrix] = {}
    for eid in net.edge_order:
        tail = net.edge_map[eid].tail
        acc = gf.zeros(n, l * k)
        for src, m in zip(edge_inputs(net, eid), code.edge_maps[eid]):
            g = _source_selector(net.sources.index(tail), l, k) if src == SOURCE else glob[src]
            acc = gf.mat_add(acc, gf.mat_mul(m, g, p), p)
        glob[eid] = acc
    return glob


def fractional_terminal_matrices(net: SumNetwork, code: FractionalLinearCode) -> list[Matrix]:
    glob = fractional_transfer(net, code)
    p, k = code.field.p, code.k
    l = len(net.sources)
    out = []
    for j in range(len(net.terminals)):
        acc = gf.zeros(k, l * k)
        for m, e in zip(code.terminal_decoders[j], terminal_inputs(net, j)):
            acc = gf.mat_add(acc, gf.mat_mul(m, glob[e], p), p)
        out.append(acc)
    return out


def sum_target(l: int, k: int) -> Matrix:
    """[I_k | I_k | ... | I_k] with l blocks."""
    return tuple(tuple(int(c % k == r) for c in range(l * k)) for r in range(k))


def _fractional_ok_transfer(net: SumNetwork, code: FractionalLinearCode) -> bool:
    target = sum_target(len(net.sources), code.k)
    return all(m == target for m in fractional_terminal_matrices(net, code))


def _fractional_ok_exhaustive(net: SumNetwork, code: FractionalLinearCode) -> bool:
    p, k, n = code.field.p, code.k, code.n
    l = len(net.sources)
    for flat in product(range(p), repeat=l * k):
        blocks = [flat[i * k:(i + 1) * k] for i in range(l)]
        want = tuple(sum(b[r] for b in blocks) % p for r in range(k))
        sym: dict[EdgeId, tuple[int, ...]] = {}
        for eid in net.edge_order:
            tail = net.edge_map[eid].tail
            acc = [0] * n
            for src, m in zip(edge_inputs(net, eid), code.edge_maps[eid]):
                x = blocks[net.sources.index(tail)] if src == SOURCE else sym[src]
                for r in range(n):
                    acc[r] += sum(a * b for a, b in zip(m[r], x))
            sym[eid] = tuple(a % p for a in acc)
        for j in range(len(net.terminals)):
            acc = [0] * k
            for m, e in zip(code.terminal_decoders[j], terminal_inputs(net, j)):
                for r in range(k):
                    acc[r] += sum(a * b for a, b in zip(m[r], sym[e]))
            if tuple(a % p for a in acc) != want:
                return False
    return True


def verify_fractional(net: SumNetwork, code: FractionalLinearCode, method: str = "auto") -> bool:
    """Check every terminal recovers the blockwise sum.

    ``method``: "transfer", "exhaustive", or "auto" (transfer, plus an
    exhaustive cross-check when |F|^(l*k) <= 729; a disagreement raises).
    """
    check_shape(net, code)
    if method == "transfer":
        return _fractional_ok_transfer(net, code)
    if method == "exhaustive":
        return _fractional_ok_exhaustive(net, code)
    ok = _fractional_ok_transfer(net, code)
    if code.field.p ** (len(net.sources) * code.k) <= EXHAUSTIVE_STATE_CAP:
        if _fractional_ok_exhaustive(net, code) != ok:
            raise RuntimeError("transfer-matrix and exhaustive verification disagree")
    return ok


# ---------------------------------------------------------------------------
# reverse network

def reverse_code(net: SumNetwork, code: ScalarLinearCode) -> ScalarLinearCode:
    """A code for ``net.reverse()`` obtained by transposing the local coefficients.

    Writing the code as source-to-edge coefficients A, edge-to-edge K and
    edge-to-terminal B, terminals see A (I - K)^-1 B, the all-ones matrix.
    The reversed network uses B^T, K^T, A^T and therefore sees its transpose,
    again all ones. Coefficient values are reused verbatim, so XOR codes map
    to XOR codes.
    """
    check_shape(net, code)
    if not verify_transfer(net, code):
        raise InputCodeInvalid("input code does not solve the network")
    rev = net.reverse()
    # K[(e, f)]: coefficient of edge e in the map of edge f
    k_coef: dict[tuple[EdgeId, EdgeId], int] = {}
    a_coef: dict[EdgeId, int] = {}
    for e in net.edges:
        for src, c in zip(edge_inputs(net, e.id), code.edge_maps[e.id]):
            if src == SOURCE:
                a_coef[e.id] = c
            else:
                k_coef[(src, e.id)] = c
    b_coef: dict[tuple[EdgeId, int], int] = {}
    for j in range(len(net.terminals)):
        for c, e in zip(code.terminal_decoders[j], terminal_inputs(net, j)):
            b_coef[(e, j)] = c

    edge_maps: dict[EdgeId, tuple[int, ...]] = {}
    for e in rev.edges:
        coeffs = []
        for src in edge_inputs(rev, e.id):
            if src == SOURCE:
                # rev tail is an original terminal
                coeffs.append(b_coef[(e.id, net.terminals.index(e.tail))])
            else:
                coeffs.append(k_coef[(e.id, src)])
        edge_maps[e.id] = tuple(coeffs)
    decoders = tuple(
        tuple(a_coef[e] for e in terminal_inputs(rev, i)) for i in range(len(rev.terminals))
    )
    return ScalarLinearCode(code.field, edge_maps, decoders)
