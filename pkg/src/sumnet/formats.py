"""Plain-text network and code files.

Network file::

    # comment
    node s1 source
    node t1 terminal
    node u
    edge e1 s1 u

Code file::

    field 3
    block 2 3                    # optional; absent means scalar (1, 1)
    coef e1 source 1             # edge e1 reads its tail's source symbol
    coef e2 e1 1,0;0,1           # matrix rows split by ';', entries by ','
    decode t1 e2 1,1

Unlisted coefficients are zero. Names are whitespace-free tokens.
"""

from __future__ import annotations

from typing import Iterator

from .errors import CycleDetected, ParseError, ValidationError
from .gf import Matrix, PrimeField
from .multigraph import Edge, SumNetwork
from .netcode import SOURCE, FractionalLinearCode, ScalarLinearCode, edge_inputs, terminal_inputs

ROLES = ("source", "terminal")


def _lines(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, token), ...]) for non-empty lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        if toks:
            yield lineno, toks


def parse_network(text: str, require_3s3t: bool = False) -> SumNetwork:
    """Parse a network file. Node and edge ids follow declaration order."""
    node_ids: dict[str, int] = {}
    roles: dict[int, str] = {}
    edges: list[Edge] = []
    edge_names: dict[int, str] = {}
    seen_edges: set[str] = set()
    for lineno, toks in _lines(text):
        col, kw = toks[0]
        if kw == "node":
            if len(toks) not in (2, 3):
                raise ParseError("expected: node <name> [source|terminal]", lineno, col)
            ncol, name = toks[1]
            if name in node_ids:
                raise ValidationError(f"line {lineno}: duplicate node {name!r}")
            node_ids[name] = len(node_ids)
            if len(toks) == 3:
                rcol, role = toks[2]
                if role not in ROLES:
                    raise ParseError(f"unknown role {role!r}", lineno, rcol)
                roles[node_ids[name]] = role
        elif kw == "edge":
            if len(toks) != 4:
                raise ParseError("expected: edge <name> <tail> <head>", lineno, col)
            (_, name), (tcol, tail), (hcol, head) = toks[1:]
            if name in seen_edges:
                raise ValidationError(f"line {lineno}: duplicate edge {name!r}")
            if name == SOURCE:
                raise ValidationError(f"line {lineno}: {SOURCE!r} is reserved")
            for c, v in ((tcol, tail), (hcol, head)):
                if v not in node_ids:
                    raise ValidationError(f"line {lineno}, column {c}: undeclared node {v!r}")
            if tail == head:
                raise ValidationError(f"line {lineno}: self-loop on {tail!r}")
            eid = len(edges)
            edges.append(Edge(eid, node_ids[tail], node_ids[head]))
            edge_names[eid] = name
            seen_edges.add(name)
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, col)
    sources = [v for v, r in roles.items() if r == "source"]
    terminals = [v for v, r in roles.items() if r == "terminal"]
    if require_3s3t and (len(sources) != 3 or len(terminals) != 3):
        raise ValidationError(f"need 3 sources and 3 terminals, found {len(sources)} and {len(terminals)}")
    try:
        return SumNetwork(
            node_ids.values(),
            edges,
            sources,
            terminals,
            node_names={v: k for k, v in node_ids.items()},
            edge_names=edge_names,
        )
    except CycleDetected as exc:
        raise ValidationError(f"cycle detected: {exc}") from exc


def render_network(net: SumNetwork) -> str:
    """Render ``net.canonical()``; parsing the text back gives that network."""
    net = net.canonical()
    lines = []
    for v in net.nodes:
        role = " source" if v in net.sources else " terminal" if v in net.terminals else ""
        lines.append(f"node {net.node_names[v]}{role}")
    for e in net.edges:
        lines.append(f"edge {net.edge_names[e.id]} {net.node_names[e.tail]} {net.node_names[e.head]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# code files

def format_matrix(m: Matrix) -> str:
    return ";".join(",".join(str(x) for x in row) for row in m)


def _parse_matrix(tok: str, rows: int, cols: int, p: int, lineno: int, col: int) -> Matrix:
    try:
        m = tuple(tuple(int(x) for x in r.split(",")) for r in tok.split(";"))
    except ValueError:
        raise ParseError(f"bad matrix {tok!r}", lineno, col) from None
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ParseError(f"matrix must be {rows}x{cols}", lineno, col)
    if any(not 0 <= x < p for r in m for x in r):
        raise ParseError(f"entries must lie in [0, {p})", lineno, col)
    return m


def parse_code(text: str, net: SumNetwork) -> ScalarLinearCode | FractionalLinearCode:
    """Parse a code file against ``net``. Returns a scalar code unless a
    ``block`` line is present."""
    field: PrimeField | None = None
    k = n = 1
    blocked = False
    edge_maps: dict[int, list[Matrix | None]] = {}
    decoders: dict[int, list[Matrix | None]] = {}
    edge_ids = {name: eid for eid, name in net.edge_names.items()}
    term_ids = {net.node_names[t]: j for j, t in enumerate(net.terminals)}
    seen: set[tuple] = set()

    for lineno, toks in _lines(text):
        col, kw = toks[0]
        if kw == "field":
            if len(toks) != 2 or field is not None or edge_maps or decoders:
                raise ParseError("one 'field <p>' line must come first", lineno, col)
            try:
                field = PrimeField(int(toks[1][1]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, toks[1][0]) from None
            continue
        if field is None:
            raise ParseError("missing 'field' line", lineno, col)
        if kw == "block":
            if len(toks) != 3 or blocked or edge_maps or decoders:
                raise ParseError("'block <k> <n>' must follow the field line", lineno, col)
            try:
                k, n = int(toks[1][1]), int(toks[2][1])
            except ValueError:
                raise ParseError("block sizes must be integers", lineno, toks[1][0]) from None
            if k < 1 or n < 1:
                raise ParseError("block sizes must be positive", lineno, toks[1][0])
            blocked = True
        elif kw == "coef":
            if len(toks) != 4:
                raise ParseError("expected: coef <edge> <input> <matrix>", lineno, col)
            (ecol, ename), (icol, iname), (mcol, mtok) = toks[1:]
            if ename not in edge_ids:
                raise ParseError(f"unknown edge {ename!r}", lineno, ecol)
            eid = edge_ids[ename]
            ins = edge_inputs(net, eid)
            want = SOURCE if iname == SOURCE else edge_ids.get(iname)
            if want is None or want not in ins:
                raise ParseError(f"{iname!r} is not an input of edge {ename!r}", lineno, icol)
            if ("coef", eid, want) in seen:
                raise ParseError("duplicate coefficient", lineno, col)
            seen.add(("coef", eid, want))
            slot = ins.index(want)
            m = _parse_matrix(mtok, n, k if want == SOURCE else n, field.p, lineno, mcol)
            edge_maps.setdefault(eid, [None] * len(ins))[slot] = m
        elif kw == "decode":
            if len(toks) != 4:
                raise ParseError("expected: decode <terminal> <edge> <matrix>", lineno, col)
            (tcol, tname), (ecol, ename), (mcol, mtok) = toks[1:]
            if tname not in term_ids:
                raise ParseError(f"unknown terminal {tname!r}", lineno, tcol)
            j = term_ids[tname]
            ins = terminal_inputs(net, j)
            if ename not in edge_ids or edge_ids[ename] not in ins:
                raise ParseError(f"{ename!r} is not an in-edge of {tname!r}", lineno, ecol)
            eid = edge_ids[ename]
            if ("decode", j, eid) in seen:
                raise ParseError("duplicate decoder entry", lineno, col)
            seen.add(("decode", j, eid))
            decoders.setdefault(j, [None] * len(ins))[ins.index(eid)] = _parse_matrix(mtok, k, n, field.p, lineno, mcol)
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, col)
    if field is None:
        raise ParseError("missing 'field' line", 1)

    full_maps = {}
    for e in net.edges:
        ins = edge_inputs(net, e.id)
        given = edge_maps.get(e.id, [None] * len(ins))
        full_maps[e.id] = tuple(
            m if m is not None else tuple((0,) * (k if src == SOURCE else n) for _ in range(n))
            for src, m in zip(ins, given)
        )
    full_dec = []
    for j in range(len(net.terminals)):
        ins = terminal_inputs(net, j)
        given = decoders.get(j, [None] * len(ins))
        full_dec.append(tuple(m if m is not None else tuple((0,) * n for _ in range(k)) for m in given))
    code = FractionalLinearCode(field, k, n, full_maps, tuple(full_dec))
    if blocked:
        return code
    return ScalarLinearCode(
        field,
        {e: tuple(m[0][0] for m in ms) for e, ms in full_maps.items()},
        tuple(tuple(m[0][0] for m in dec) for dec in full_dec),
    )


def render_code(net: SumNetwork, code: ScalarLinearCode | FractionalLinearCode) -> str:
    frac = code if isinstance(code, FractionalLinearCode) else code.as_fractional()
    lines = [f"field {code.field.p}"]
    if isinstance(code, FractionalLinearCode):
        lines.append(f"block {code.k} {code.n}")
    for e in net.edges:
        for src, m in zip(edge_inputs(net, e.id), frac.edge_maps[e.id]):
            iname = SOURCE if src == SOURCE else net.edge_names[src]
            lines.append(f"coef {net.edge_names[e.id]} {iname} {format_matrix(m)}")
    for j, t in enumerate(net.terminals):
        for eid, m in zip(terminal_inputs(net, j), frac.terminal_decoders[j]):
            lines.append(f"decode {net.node_names[t]} {net.edge_names[eid]} {format_matrix(m)}")
    return "\n".join(lines) + "\n"
