"""Command line interface.

Subcommands::

    relforest cascade INPUT [--format edges|json] [--emit json|dot] [--table]
                            [--deltas-only] [--outgoing] [-o OUT]
    relforest arborescence INPUT --root LABEL [--format edges|json] [--outgoing]
    relforest verify [--max-n N] [--samples S] [--densities D,...]
                     [--weight-range LO,HI] [--seed SEED]

Exit codes: 0 ok, 1 infeasible request or failed verification, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import cascade as _cascade
from .arborescence import min_in_arborescence
from .digraph import GraphError, WeightedDigraph, build_from_arcs
from .oracle import DEFAULT_CAP, verify_cascade

log = logging.getLogger("relforest")

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2


class ParseError(ValueError):
    pass


@dataclass
class LabeledGraph:
    labels: list[str]
    arcs: list[tuple[int, int, float]]  # collapsed, self-loops removed
    graph: WeightedDigraph

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ParseError(f"unknown vertex label {label!r}") from None


def _collapse(labels: list[str], raw: list[tuple[int, int, float]]) -> LabeledGraph:
    best: dict[tuple[int, int], float] = {}
    for t, h, w in raw:
        if not math.isfinite(w):
            raise ParseError(f"arc {labels[t]} -> {labels[h]}: weight must be finite")
        if t == h:
            log.warning("dropping self-loop on %s", labels[t])
            continue
        if (t, h) in best:
            log.warning("duplicate arc %s -> %s; keeping the minimum weight", labels[t], labels[h])
            w = min(w, best[(t, h)])
        best[(t, h)] = w
    arcs = [(t, h, w) for (t, h), w in sorted(best.items())]
    return LabeledGraph(labels, arcs, build_from_arcs(len(labels), arcs))


def parse_edge_list(text: str) -> LabeledGraph:
    """``tail head weight`` per line; a lone token declares a vertex."""
    labels: list[str] = []
    ids: dict[str, int] = {}

    def vid(tok):
        if tok not in ids:
            ids[tok] = len(labels)
            labels.append(tok)
        return ids[tok]

    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) == 1:
            vid(toks[0])
        elif len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"line {lineno}: bad weight {toks[2]!r}") from None
            if math.isnan(w):
                raise ParseError(f"line {lineno}: NaN weight")
            raw.append((vid(toks[0]), vid(toks[1]), w))
        else:
            raise ParseError(f"line {lineno}: expected 'tail head weight' or a single vertex label")
    if not labels:
        raise ParseError("input declares no vertices")
    return _collapse(labels, raw)


def parse_json_graph(text: str) -> LabeledGraph:
    """Object with ``labels`` and ``arcs`` (``[tail, head, weight]`` by label).

    Result documents written by ``cascade --emit json`` are accepted too.
    """
    try:
        doc = json.loads(text)
        labels = [str(x) for x in doc["labels"]]
        arcs = doc.get("arcs", [])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON graph document: {exc}") from None
    ids = {lab: i for i, lab in enumerate(labels)}
    if len(ids) != len(labels):
        raise ParseError("duplicate vertex labels")
    if not labels:
        raise ParseError("input declares no vertices")
    raw = []
    for arc in arcs:
        try:
            t, h, w = arc
            raw.append((ids[str(t)], ids[str(h)], float(w)))
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"bad arc {arc!r}") from None
    return _collapse(labels, raw)


def load_graph(path: str, fmt: str) -> LabeledGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    return parse_json_graph(text) if fmt == "json" else parse_edge_list(text)


def _num(x: float):
    """JSON-friendly number: integral weights print without a fraction."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return int(x)
    return x


def result_document(lg: LabeledGraph, result: _cascade.CascadeResult, outgoing: bool, deltas_only: bool) -> dict:
    forests = []
    prev_phi = None
    for (k, f), rec in zip(result.forests(), [None] + result.trace):
        entry = {"k": k, "phi": _num(result.phi[k])}
        if deltas_only:
            entry["changed"] = [] if rec is None else [[q, int(f.parent[q])] for q in rec.D]
        else:
            entry["parent"] = [int(p) for p in f.parent]
        if prev_phi is not None:
            entry["increment"] = _num(result.phi[k] - prev_phi)
        prev_phi = result.phi[k]
        forests.append(entry)
    trace = []
    for rec in result.trace:
        d = rec.as_dict()
        d["increment"] = _num(d["increment"])
        trace.append(d)
    return {
        "n": result.n,
        "labels": lg.labels,
        "orientation": "outgoing" if outgoing else "entering",
        "arcs": [[lg.labels[t], lg.labels[h], _num(w)] for t, h, w in lg.arcs],
        "status": result.status.value,
        "k_min": result.k_min,
        "forests": forests,
        "trace": trace,
    }


def _dot_id(label: str) -> str:
    return json.dumps(label)


def result_dot(lg: LabeledGraph, g: WeightedDigraph, result: _cascade.CascadeResult, outgoing: bool) -> str:
    out = []
    for k, f in result.forests():
        lines = [f"digraph k{k} {{", f'  label="k={k} phi={_num(result.phi[k])}";', "  node [shape=circle];"]
        for v, lab in enumerate(lg.labels):
            shape = "doublecircle" if f.parent[v] < 0 else "circle"
            lines.append(f"  {_dot_id(lab)} [shape={shape}];")
        for q, p in f.arcs().items():
            t, h = (p, q) if outgoing else (q, p)
            lines.append(f'  {_dot_id(lg.labels[t])} -> {_dot_id(lg.labels[h])} [label="{_num(g.w[q, p])}"];')
        lines.append("}")
        out.append("\n".join(lines))
    return "\n".join(out) + "\n"


def result_table(result: _cascade.CascadeResult) -> str:
    rows = ["k\tphi\tincrement"]
    prev = None
    for k in result.ks:
        phi = result.phi[k]
        inc = "-" if prev is None else str(_num(phi - prev))
        rows.append(f"{k}\t{_num(phi)}\t{inc}")
        prev = phi
    return "\n".join(rows) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_cascade(args) -> int:
    lg = load_graph(args.input, args.format)
    g = lg.graph.transpose() if args.outgoing else lg.graph
    result = _cascade.run(g, deltas_only=args.deltas_only)
    if args.table:
        sys.stdout.write(result_table(result))
        if args.output is None:
            return EXIT_OK
    if args.emit == "dot":
        text = result_dot(lg, g, result, args.outgoing)
    else:
        doc = result_document(lg, result, args.outgoing, args.deltas_only)
        text = json.dumps(doc, indent=2) + "\n"
    _write(text, args.output)
    return EXIT_OK


def cmd_arborescence(args) -> int:
    lg = load_graph(args.input, args.format)
    root = lg.index(args.root)
    g = lg.graph.transpose() if args.outgoing else lg.graph
    tree = min_in_arborescence(g, root)
    if tree is None:
        print("infeasible")
        return EXIT_INFEASIBLE
    print(f"weight {_num(tree.weight)}")
    for q, p in tree.arcs().items():
        t, h = (p, q) if args.outgoing else (q, p)
        print(f"{lg.labels[t]} -> {lg.labels[h]} {_num(g.w[q, p])}")
    return EXIT_OK


def random_digraph(rng: np.random.Generator, n: int, density: float, lo: int, hi: int) -> WeightedDigraph:
    mask = rng.random((n, n)) < density
    weights = rng.integers(lo, hi + 1, size=(n, n)).astype(np.float64)
    return WeightedDigraph.from_matrix(np.where(mask, weights, np.inf))


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"bad number list {text!r}") from None


def cmd_verify(args) -> int:
    if not 2 <= args.max_n <= DEFAULT_CAP:
        raise ParseError(f"--max-n must lie in 2..{DEFAULT_CAP}")
    densities = _parse_floats(args.densities)
    bounds = _parse_floats(args.weight_range)
    if len(bounds) != 2 or bounds[0] > bounds[1] or not densities:
        raise ParseError("--weight-range needs LO,HI and --densities at least one value")
    lo, hi = int(bounds[0]), int(bounds[1])
    if args.samples <= 0:
        log.warning("no samples requested; nothing verified")
        print("0 samples: vacuous pass")
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    failed = 0
    for i in range(args.samples):
        n = int(rng.integers(2, args.max_n + 1))
        density = densities[i % len(densities)]
        g = random_digraph(rng, n, density, lo, hi)
        try:
            report = verify_cascade(g, _cascade.run(g))
            ok, detail = report.passed, "; ".join(f"{c.name} {c.detail}" for c in report.failures())
        except _cascade.CascadeInvariantError as exc:
            ok, detail = False, f"invariant: {exc}"
        failed += not ok
        line = f"sample {i} n={n} density={density:g}: {'PASS' if ok else 'FAIL'}"
        print(line if ok else f"{line} {detail}")
    print(f"{args.samples - failed}/{args.samples} samples passed")
    return EXIT_OK if failed == 0 else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relforest", description="Related minimum spanning entering forests.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cascade", help="minimum forests for every number of trees")
    p.add_argument("input")
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    p.add_argument("--emit", choices=("json", "dot"), default="json")
    p.add_argument("--table", action="store_true", help="print k, phi and increments")
    p.add_argument("--deltas-only", action="store_true", help="store only the arcs changed per step")
    p.add_argument("--outgoing", action="store_true", help="build outgoing forests (transposed weights)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("arborescence", help="minimum spanning tree with a given root")
    p.add_argument("input")
    p.add_argument("--root", required=True)
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    p.add_argument("--outgoing", action="store_true")
    p.set_defaults(func=cmd_arborescence)

    p = sub.add_parser("verify", help="check the cascade against brute force on random graphs")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--densities", default="0.3,0.6,1.0")
    p.add_argument("--weight-range", default="-9,9")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
