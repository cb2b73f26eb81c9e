"""Command-line front end.

Exit codes: 0 success (controllable for ``analyze``), 1 verification
counterexamples or catalog mismatch, 2 input or usage error, 10 uncontrollable.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from netctrl import serialize
from netctrl.controllability import controllability_report
from netctrl.designer import (
    DesignTooSmall,
    ExhaustedRetries,
    InvalidSpec,
    build_design,
    dump_spec,
    load_spec,
    random_design,
    spec_to_dict,
)
from netctrl.destructive import (
    all_dcd_pairs,
    all_tcd_triples,
    derive_qcd_catalog,
    load_qcd_catalog,
    qcd_quads_5,
    WrongSize,
)
from netctrl.exactalg import PolynomialError
from netctrl.graph import (
    GraphError,
    enumerate_connected_graphs,
    format_edge_list,
    normalize_leaders,
    parse_edge_list,
    require_connected,
)
from netctrl.verifier import DEFAULT_SEED, SUITES, UnknownSuite, run_suite

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_UNCONTROLLABLE = 10
KINDS = ("dcd", "tcd", "qcd", "all")


class UsageError(ValueError):
    pass


def _read_input(path):
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _read_graph(args):
    return parse_edge_list(_read_input(args.input))


def _emit(args, text):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_leaders(text):
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--leaders expects comma-separated integers, got {text!r}") from None


def cmd_analyze(args):
    g = _read_graph(args)
    leaders = _parse_leaders(args.leaders)
    if not leaders:
        raise UsageError("analyze needs --leaders")
    rep = controllability_report(g, leaders)
    _emit(args, serialize.dump(serialize.report_to_dict(rep)))
    return EXIT_OK if rep.controllable else EXIT_UNCONTROLLABLE


def detect(g, kind="all", leaders=None):
    """Certificates of the requested kind(s); with leaders, only sets among the followers."""
    require_connected(g)
    if kind not in KINDS:
        raise UsageError(f"--kind must be one of {', '.join(KINDS)}")
    if kind == "qcd" and g.n != 5:
        raise WrongSize(
            f"QCD detection is characterised for 5-vertex graphs only (got n={g.n}); "
            "use 'design' to build QCD instances on larger graphs"
        )
    among = None
    if leaders:
        lead = set(normalize_leaders(g, leaders))
        among = [v for v in range(1, g.n + 1) if v not in lead]
    found = {}
    if kind in ("dcd", "all"):
        found["dcd"] = all_dcd_pairs(g, among)
    if kind in ("tcd", "all"):
        found["tcd"] = all_tcd_triples(g, among)
    if kind == "qcd" or (kind == "all" and g.n == 5):
        certs = qcd_quads_5(g)
        if among is not None:
            certs = [c for c in certs if set(c.quad) <= set(among)]
        found["qcd"] = certs
    return found


def cmd_detect(args):
    g = _read_graph(args)
    leaders = _parse_leaders(args.leaders)
    found = detect(g, args.kind, leaders)
    body = {"n": g.n, "edges": [list(e) for e in g.edges()], "leaders": leaders or []}
    conv = {"dcd": serialize.dcd_to_dict, "tcd": serialize.tcd_to_dict, "qcd": serialize.qcd_to_dict}
    for k, certs in found.items():
        body[k] = [conv[k](c) for c in certs]
    _emit(args, serialize.dump(serialize.document("detection", body)))
    return EXIT_OK


def cmd_design(args):
    if args.random:
        n, seed = args.random
        spec = random_design(n, seed)
    else:
        spec = load_spec(_read_input(args.input))
    out = build_design(spec)
    doc = serialize.design_to_dict(out, spec_to_dict(spec))
    _emit(args, serialize.dump(doc))
    if args.edges:
        Path(args.edges).write_text(
            format_edge_list(out.graph, comment=f"designed QCD graph, eigenvalue {out.eigenvalue}")
        )
    if args.spec_out:
        Path(args.spec_out).write_text(dump_spec(spec))
    print(f"verified: L.eta = {out.eigenvalue} eta (sigma={out.sigma})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    runs = run_suite(args.suite, args.n, args.seed if args.seed is not None else DEFAULT_SEED)
    docs = [r.to_dict() for r in runs]
    for r in runs:
        print(r.summary(), file=sys.stderr)
    _emit(args, serialize.dump({"runs": docs}) if len(docs) > 1 else serialize.dump(docs[0]))
    return EXIT_OK if all(r.passed for r in runs) else EXIT_COUNTEREXAMPLE


def cmd_catalog(args):
    cat = derive_qcd_catalog()
    text = cat.to_text()
    note = cat.discrepancy()
    print(f"derived {cat.class_count} classes" + (f"; {note}" if note else ""), file=sys.stderr)
    if args.check:
        golden = load_qcd_catalog().to_text()
        if golden != text:
            print("derived catalog differs from the packaged catalog", file=sys.stderr)
            return EXIT_COUNTEREXAMPLE
    _emit(args, text)
    return EXIT_OK


def cmd_enumerate(args):
    if args.n is None:
        raise UsageError("enumerate needs --n")
    graphs = list(enumerate_connected_graphs(args.n))
    lines = [f"# connected labelled graphs on {args.n} vertices: {len(graphs)}"]
    if args.list:
        lines += [" ".join(f"{u}-{v}" for u, v in g.edges()) for g in graphs]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def to_dot(g, leaders=(), shaded=(), labels=None, name="G"):
    """Undirected DOT text; leaders drawn as squares, shaded vertices filled."""
    leaders, shaded = set(leaders), set(shaded)
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(1, g.n + 1):
        attrs = []
        if v in leaders:
            attrs.append("shape=box")
        if v in shaded:
            attrs += ["style=filled", "fillcolor=lightgray"]
        if labels is not None:
            attrs.append(f'xlabel="{labels[v - 1]}"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(args):
    g = _read_graph(args)
    leaders = _parse_leaders(args.leaders) or []
    shaded, labels = set(), None
    if args.kind:
        found = detect(g, args.kind, leaders)
        certs = [c for k in ("qcd", "tcd", "dcd") for c in found.get(k, [])]
        for c in certs:
            nodes = getattr(c, "quad", None) or getattr(c, "nodes", None) or (c.p, c.q)
            shaded |= set(nodes)
        if certs:
            labels = [serialize.scalar_to_text(x) for x in certs[0].vector]
    _emit(args, to_dot(g, leaders, shaded, labels))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="netctrl", description="Leader-follower controllability of graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", help="edge-list file ('-' for stdin)")
        p.add_argument("--output", help="write the result here instead of stdout")
        return p

    p = common(sub.add_parser("analyze", help="controllability report for a leader set"))
    p.add_argument("--leaders", help="comma-separated leader vertices, e.g. 1,3")
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("detect", help="list DCD/TCD/QCD certificates"))
    p.add_argument("--kind", default="all", help="dcd, tcd, qcd or all")
    p.add_argument("--leaders", help="restrict to sets among the followers of these leaders")
    p.set_defaults(func=cmd_detect)

    p = common(sub.add_parser("design", help="build a QCD topology from a spec"))
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "SEED"), help="sample a random valid spec")
    p.add_argument("--edges", help="also write the designed graph as an edge list")
    p.add_argument("--spec-out", help="also write the (possibly sampled) spec")
    p.set_defaults(func=cmd_design)

    p = common(sub.add_parser("verify", help="run a verification suite"), needs_input=False)
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("catalog", help="derive the 5-vertex QCD catalog"), needs_input=False)
    p.add_argument("--check", action="store_true", help="fail if it differs from the packaged catalog")
    p.set_defaults(func=cmd_catalog)

    p = common(sub.add_parser("enumerate", help="count connected labelled graphs"), needs_input=False)
    p.add_argument("--n", type=int)
    p.add_argument("--list", action="store_true", help="also print every graph's edges")
    p.set_defaults(func=cmd_enumerate)

    p = common(sub.add_parser("dot", help="export DOT text"))
    p.add_argument("--leaders", help="vertices drawn as squares")
    p.add_argument("--kind", help="shade destructive sets of this kind among the followers")
    p.set_defaults(func=cmd_dot)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, InvalidSpec, UnknownSuite, UsageError, DesignTooSmall, ExhaustedRetries,
            serialize.FormatError, PolynomialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
