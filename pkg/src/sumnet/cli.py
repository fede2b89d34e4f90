"""Command-line front end.

    sumnet analyze NET
    sumnet classify NET
    sumnet construct NET --field P --mode xor|linear|theorem2|fractional [--block K N]
    sumnet verify NET CODE
    sumnet generate --seed S [--nodes N --edges M ...]
    sumnet oracle NET --field P

Every command builds one report dict; ``--format text`` and
``--format structured`` (JSON) are two renderings of it.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, classifier, constructor, formats, oracle
from .errors import (
    ClassMismatch,
    InvalidAlpha,
    InvalidField,
    NoValidPaths,
    NotThreeByThree,
    ParseError,
    SearchSpaceTooLarge,
    SumNetError,
    ValidationError,
)
from .gf import PrimeField, default_alpha, theorem2_constants
from .multigraph import SumNetwork
from .netcode import (
    SOURCE,
    FractionalLinearCode,
    ScalarLinearCode,
    edge_inputs,
    first_failure,
    is_xor_code,
    terminal_inputs,
    verify_exhaustive,
    verify_fractional,
    verify_transfer,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2  # argparse
EXIT_NO_CODE = 10
EXIT_BUDGET = 11
EXIT_INPUT = 20
EXIT_ARGUMENT = 21

# fractional codes are also checked by exhaustion when the input space is this small
FRACTIONAL_EXHAUSTIVE_CAP = 3 ** 9


# ---------------------------------------------------------------------------
# report building

def _pair(net: SumNetwork, pair: tuple[int, int]) -> list[str]:
    i, j = pair
    return [net.node_names[net.sources[i]], net.node_names[net.terminals[j]]]


def network_section(net: SumNetwork) -> dict:
    return {
        "nodes": len(net.nodes),
        "edges": len(net.edges),
        "sources": [net.node_names[s] for s in net.sources],
        "terminals": [net.node_names[t] for t in net.terminals],
    }


def analysis_section(net: SumNetwork) -> dict:
    rep = analysis.analyze(net)
    return {
        "connectivity": [[int(x) for x in row] for row in rep.connectivity],
        "connected": rep.connected,
        "kappa": rep.kappa,
        "disconnect_sets": {
            net.edge_names[d.edge]: [_pair(net, p) for p in sorted(d.pairs)] for d in rep.disconnect
        },
        "abc": {net.edge_names[e]: sorted(tags) for e, tags in sorted(rep.abc.items())},
    }


def class_section(net: SumNetwork, cls: classifier.SolvabilityClass) -> dict:
    out: dict = {
        "class": cls.variant.value,
        "capacity": cls.capacity_note,
        "reason": cls.reason,
        "witness": None,
    }
    if cls.witness is not None:
        w = cls.witness
        lab = w.labeling
        out["witness"] = {
            "e1": net.edge_names[w.e1],
            "e2": net.edge_names[w.e2],
            "source_perm": [i + 1 for i in lab.source_perm],
            "terminal_perm": [j + 1 for j in lab.terminal_perm],
            "labelled_sources": [net.node_names[lab.s(net, i)] for i in (1, 2, 3)],
            "labelled_terminals": [net.node_names[lab.t(net, j)] for j in (1, 2, 3)],
        }
    return out


def code_section(net: SumNetwork, code: ScalarLinearCode | FractionalLinearCode) -> dict:
    scalar = isinstance(code, ScalarLinearCode)
    frac = code.as_fractional() if scalar else code
    show = (lambda m: m[0][0]) if scalar else formats.format_matrix
    edges = {}
    for e in net.edges:
        ins = edge_inputs(net, e.id)
        edges[net.edge_names[e.id]] = {
            "inputs": [SOURCE if s == SOURCE else net.edge_names[s] for s in ins],
            "coefficients": [show(m) for m in frac.edge_maps[e.id]],
        }
    decoders = {}
    for j, t in enumerate(net.terminals):
        decoders[net.node_names[t]] = {
            "inputs": [net.edge_names[e] for e in terminal_inputs(net, j)],
            "coefficients": [show(m) for m in frac.terminal_decoders[j]],
        }
    return {
        "field": code.field.p,
        "block": [frac.k, frac.n],
        "rate": str(Fraction(frac.k, frac.n)),
        "xor": is_xor_code(code) if scalar else None,
        "edges": edges,
        "decoders": decoders,
    }


# ---------------------------------------------------------------------------
# rendering

def _render_text(report: dict) -> str:
    lines: list[str] = []
    if "network" in report:
        n = report["network"]
        lines.append(
            f"network: {n['nodes']} nodes, {n['edges']} edges; "
            f"sources {' '.join(n['sources'])}; terminals {' '.join(n['terminals'])}"
        )
    if "analysis" in report:
        a = report["analysis"]
        srcs, terms = report["network"]["sources"], report["network"]["terminals"]
        w = max(len(x) for x in srcs + terms) + 2
        lines.append("connectivity:")
        lines.append(" " * w + "".join(t.ljust(w) for t in terms).rstrip())
        for s, row in zip(srcs, a["connectivity"]):
            lines.append(s.ljust(w) + "".join(str(x).ljust(w) for x in row).rstrip())
        lines.append(f"kappa: {a['kappa']}")
        lines.append("disconnect sets:")
        for e, pairs in a["disconnect_sets"].items():
            lines.append(f"  {e}: " + (" ".join(f"({s},{t})" for s, t in pairs) or "-"))
        lines.append("maximum-disconnecting edges (A/B/C):")
        for e, tags in a["abc"].items():
            lines.append(f"  {e}: {''.join(tags) or '-'}")
    if "classification" in report:
        c = report["classification"]
        lines.append(f"class: {c['class']}, capacity {c['capacity']}")
        if c["reason"]:
            lines.append(f"reason: {c['reason']}")
        wit = c["witness"]
        if wit:
            lines.append(
                f"witness: e1={wit['e1']} e2={wit['e2']} "
                f"sources ({' '.join(map(str, wit['source_perm']))}) "
                f"terminals ({' '.join(map(str, wit['terminal_perm']))}) "
                f"= s1..s3 {' '.join(wit['labelled_sources'])}, t1..t3 {' '.join(wit['labelled_terminals'])}"
            )
    for key in ("search", "oracle", "cut_bound", "constants"):
        if key in report:
            body = ", ".join(f"{k}={v}" for k, v in report[key].items())
            lines.append(f"{key}: {body}")
    if report.get("code"):
        c = report["code"]
        lines.append(f"code over GF({c['field']}), block {c['block'][0]} {c['block'][1]}, rate {c['rate']}"
                     + (f", xor={c['xor']}" if c["xor"] is not None else ""))
        for e, d in c["edges"].items():
            terms = " + ".join(f"[{co}]*{i}" for i, co in zip(d["inputs"], d["coefficients"])) or "0"
            lines.append(f"  {e} = {terms}")
        for t, d in c["decoders"].items():
            terms = " + ".join(f"[{co}]*{i}" for i, co in zip(d["inputs"], d["coefficients"])) or "0"
            lines.append(f"  decode {t} = {terms}")
    if "verify" in report:
        v = report["verify"]
        lines.append(f"verify: {'pass' if v['pass'] else 'fail'}; exhaustive={v['exhaustive']} "
                     f"transfer={v['transfer']} agree={v['agree']}")
        if v.get("counterexample"):
            ce = v["counterexample"]
            lines.append(f"  first failure: inputs {tuple(ce['inputs'])} at terminal {ce['terminal']}")
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "structured":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(_render_text(report))


# ---------------------------------------------------------------------------
# commands

def _load_net(path: str, need_3s3t: bool = False) -> SumNetwork:
    return formats.parse_network(Path(path).read_text(encoding="utf-8"), require_3s3t=need_3s3t)


def _field(p: int) -> PrimeField:
    return PrimeField(p)


def _budget(args) -> constructor.SearchBudget:
    return constructor.SearchBudget(max_codes=args.max_codes, time_limit=args.time_limit)


def cmd_analyze(args) -> tuple[dict, int]:
    net = _load_net(args.network)
    return {"network": network_section(net), "analysis": analysis_section(net)}, EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    net = _load_net(args.network, need_3s3t=True)
    cls = classifier.classify(net)
    return {
        "network": network_section(net),
        "analysis": analysis_section(net),
        "classification": class_section(net, cls),
    }, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    net = _load_net(args.network, need_3s3t=True)
    field = _field(args.field)
    cls = classifier.classify(net)
    report: dict = {"network": network_section(net), "classification": class_section(net, cls)}
    code = None
    status = EXIT_OK
    if args.mode == "theorem2":
        if cls.variant is not classifier.Variant.SOLVABLE_EXCEPT_F2:
            raise ClassMismatch(f"theorem2 mode needs a SolvableExceptF2 network, this one is {cls.variant.value}")
        alpha_el = default_alpha(field) if args.alpha is None else field(args.alpha)
        beta, gamma = theorem2_constants(field, alpha_el)
        code = constructor.construct_theorem2(net, cls.witness, field, alpha_el)
        report["constants"] = {"alpha": alpha_el.value, "beta": beta.value, "gamma": gamma.value}
    elif args.mode == "fractional":
        if args.block is None:
            raise ValueError("fractional mode needs --block K N")
        k, n = args.block
        if cls.variant is classifier.Variant.NONSOLVABLE and not constructor.cut_bound_check(net, cls.witness, k, n):
            report["cut_bound"] = {"rate": str(Fraction(k, n)), "limit": "2/3", "feasible": False}
            report["search"] = {"found": False, "complete": True, "explored": 0, "method": "cut bound"}
            report["verdict"] = f"no ({k},{n}) code: " + constructor.cut_bound_explanation(k, n)
            return report, EXIT_NO_CODE
        res = constructor.search_fractional(net, field, k, n, _budget(args))
        code = res.code
        report["search"] = {"found": res.found, "complete": res.complete, "explored": res.explored, "method": res.method}
    else:
        res = constructor.search_scalar(net, field, _budget(args), xor_only=args.mode == "xor")
        code = res.code
        report["search"] = {"found": res.found, "complete": res.complete, "explored": res.explored, "method": res.method}
    if code is None:
        complete = report["search"]["complete"]
        report["verdict"] = "no code exists (search complete)" if complete else "no code found (budget exhausted)"
        status = EXIT_NO_CODE if complete else EXIT_BUDGET
    else:
        report["code"] = code_section(net, code)
        report["verdict"] = "verified code"
        if args.output:
            Path(args.output).write_text(formats.render_code(net, code), encoding="utf-8")
    return report, status


def cmd_verify(args) -> tuple[dict, int]:
    net = _load_net(args.network)
    code = formats.parse_code(Path(args.code).read_text(encoding="utf-8"), net)
    if args.field is not None and args.field != code.field.p:
        raise ParseError(f"code file is over GF({code.field.p}) but --field {args.field} was given", 1)
    counter = None
    if isinstance(code, ScalarLinearCode):
        ex = verify_exhaustive(net, code)
        tr = verify_transfer(net, code)
        fail = first_failure(net, code)
        if fail is not None:
            xs, j = fail
            counter = {"inputs": list(xs), "terminal": net.node_names[net.terminals[j]]}
    else:
        tr = verify_fractional(net, code, method="transfer")
        small = code.field.p ** (len(net.sources) * code.k) <= FRACTIONAL_EXHAUSTIVE_CAP
        ex = verify_fractional(net, code, method="exhaustive") if small else None
    agree = ex is None or ex == tr
    ok = tr and agree
    report = {
        "network": network_section(net),
        "verify": {"pass": ok, "exhaustive": ex, "transfer": tr, "agree": agree, "counterexample": counter},
    }
    return report, EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_generate(args) -> tuple[str, int]:
    cfg = oracle.GeneratorConfig(
        node_budget=args.nodes,
        edge_budget=args.edges,
        seed=args.seed,
        ensure_connected=not args.allow_disconnected,
        ensure_kappa=args.kappa,
        max_slots=args.max_slots,
        family=args.family,
    )
    return formats.render_network(oracle.generate_random(cfg)), EXIT_OK


def cmd_oracle(args) -> tuple[dict, int]:
    net = _load_net(args.network)
    field = _field(args.field)
    cap = args.cap if args.cap is not None else oracle.default_cap(field.p)
    code = oracle.brute_force_solvable(net, field, cap=cap)
    report: dict = {
        "network": network_section(net),
        "oracle": {"field": field.p, "slots": oracle.count_slots(net), "cap": cap,
                   "solvable": code is not None, "complete": True},
    }
    if code is not None:
        report["code"] = code_section(net, code)
        report["verdict"] = f"scalar linear code exists over GF({field.p})"
        return report, EXIT_OK
    report["verdict"] = f"no scalar linear code over GF({field.p}) (enumeration complete)"
    return report, EXIT_NO_CODE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumnet", description="3-source 3-terminal sum-network toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="disconnect sets, kappa and A/B/C tags")
    p.add_argument("network")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="solvability class and witness")
    p.add_argument("network")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="synthesize a verified code")
    p.add_argument("network")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--mode", choices=("xor", "linear", "theorem2", "fractional"), default="linear")
    p.add_argument("--block", type=int, nargs=2, metavar=("K", "N"), help="block sizes for fractional mode")
    p.add_argument("--alpha", type=int, default=None, help="theorem2 mode: alpha, not 0 or 1")
    p.add_argument("--max-codes", type=int, default=2_000_000)
    p.add_argument("--time-limit", type=float, default=120.0)
    p.add_argument("-o", "--output", help="write the code file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a code file against a network")
    p.add_argument("network")
    p.add_argument("code")
    p.add_argument("--field", type=int, default=None, help="expected field of the code file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a seeded random network file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--edges", type=int, default=14)
    p.add_argument("--family", choices=("layered", "bridged"), default="bridged")
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--max-slots", type=int, default=None)
    p.add_argument("--allow-disconnected", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive scalar-code search")
    p.add_argument("network")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="maximum coefficient slots")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, status = args.func(args)
    except (ParseError, ValidationError, NotThreeByThree, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchSpaceTooLarge as exc:
        print(f"error: search space too large: {exc.slots} slots (cap {exc.cap})", file=sys.stderr)
        return EXIT_ARGUMENT
    except (InvalidField, InvalidAlpha, ClassMismatch, NoValidPaths, ValueError, SumNetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    if args.command == "generate":
        if args.output:
            Path(args.output).write_text(result, encoding="utf-8")
        else:
            sys.stdout.write(result)
    else:
        emit(result, args.format)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
