"""Command line tooling: graph generation, label builds, label-only queries,
fuzzing against the brute-force oracle, and label statistics.

Exit code 0 means clean, 2 means the fuzz run found violations (a minimized
reproduction file is written next to the report).
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from fractions import Fraction

from .decomp import build_decomposition_tree
from .dist.bundle import build_dist_labels
from .dist.decode import ft_dist_query
from .embed import EmbeddedDigraph, graph_from_json
from .errors import InvalidSpec
from .generators import GeneratorSpec, gen_from_spec
from .labelio import LabelFile, save_dist, save_reach
from .oracle import oracle_dist, oracle_reach
from .reach.bundle import build_reach_labels
from .reach.decode import ft_reach_query
from .reports import RunReport
from .views import GraphView

INF = float("inf")


def _parse_eps(text: str) -> Fraction:
    if "/" in text:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    return Fraction(text)


def _spec_from_args(args) -> GeneratorSpec:
    return GeneratorSpec(kind=args.kind, size=args.size,
                         weight_cap=args.weight_cap,
                         deletion_p=args.deletion_p, seed=args.seed)


def cmd_gen(args) -> int:
    g = gen_from_spec(_spec_from_args(args))
    with open(args.out, "w") as fh:
        fh.write(g.to_json())
    print(f"wrote {args.out}: n={g.n} arcs={sum(1 for a in g.arcs if not a.synthetic)}")
    return 0


def _build(graph: EmbeddedDigraph, mode: str, eps: Fraction | None):
    if mode == "reach":
        tree = build_decomposition_tree(graph)
        return build_reach_labels(tree)
    return build_dist_labels(graph, eps)


def cmd_build(args) -> int:
    with open(args.graph) as fh:
        g = graph_from_json(fh.read())
    t0 = time.time()
    rep = RunReport(graph={"n": g.n, "arcs": len(g.arcs)})
    if args.mode == "reach":
        tree = build_decomposition_tree(g)
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(tree.dot_dump())
        bundles = build_reach_labels(tree)
        header = save_reach(args.out, bundles)
    else:
        if args.eps is None:
            raise InvalidSpec("dist mode needs --eps p/q")
        eps = _parse_eps(args.eps)
        bundles = build_dist_labels(g, eps)
        header = save_dist(args.out, bundles)
    rep.seconds = time.time() - t0
    rep.set_label_stats([8 * s for s in header["sizes"]])
    print(rep.to_json())
    return 0


def cmd_query(args) -> int:
    lf = LabelFile(args.labels)
    s, t, f = args.s, args.t, args.f
    recs = [lf.record(v) for v in (s, t, f)]
    assert lf.reads == 3, "query must read exactly three records"
    if lf.mode == "reach":
        ans = ft_reach_query(*recs)
        print("true" if ans else "false")
    else:
        got = ft_dist_query(recs[0], recs[1], recs[2], lf.header)
        print("infinity" if got == INF else str(got))
    return 0


def _violation(mode: str, eps, want, got) -> bool:
    if mode == "reach":
        return want != got
    if want == INF or got == INF:
        return want != got
    return not (want <= got <= (1 + eps) * want)


def _minimize(graph: EmbeddedDigraph, triple, mode, eps):
    """Shrink by deleting vertices while the violation persists."""
    from .generators import _restrict_arcs
    s, t, f = triple
    current = graph
    keep = {s, t, f}
    changed = True
    guard = 0
    while changed and guard < 8:
        guard += 1
        changed = False
        for v in range(current.n - 1, -1, -1):
            if v in keep or current.n <= 4:
                continue
            arcs = [i for i, a in enumerate(current.arcs)
                    if a.tail != v and a.head != v and not a.synthetic]
            smaller = _restrict_arcs(current, arcs)
            if smaller.n != current.n - 1:
                continue
            # renumber the triple
            remap = {}
            j = 0
            for u in range(current.n):
                if u != v:
                    remap[u] = j
                    j += 1
            s2, t2, f2 = remap[s], remap[t], remap[f]
            try:
                bundles = _build(smaller, mode, eps)
                if mode == "reach":
                    got = ft_reach_query(bundles[s2], bundles[t2], bundles[f2])
                else:
                    got = ft_dist_query(bundles["vertices"][s2],
                                        bundles["vertices"][t2],
                                        bundles["vertices"][f2], {})
                want = (oracle_reach if mode == "reach" else oracle_dist)(
                    GraphView(smaller), s2, t2, f2)
            except Exception:
                continue
            if _violation(mode, eps, want, got):
                current = smaller
                s, t, f = s2, t2, f2
                keep = {s, t, f}
                changed = True
                break
    return current, (s, t, f)


def cmd_fuzz(args) -> int:
    g = gen_from_spec(_spec_from_args(args))
    eps = _parse_eps(args.eps) if args.eps else None
    rep = RunReport(graph={"n": g.n, "arcs": len(g.arcs)})
    t0 = time.time()
    bundles = _build(g, args.mode, eps)
    view = GraphView(g)
    rng = random.Random(args.seed)
    triples = []
    if args.trials <= 0:  # exhaustive
        triples = [(s, t, f) for s, t, f in itertools.product(range(g.n), repeat=3)
                   if f not in (s, t)]
    else:
        seen = set()
        while len(seen) < min(args.trials, g.n ** 3):
            s, t, f = (rng.randrange(g.n) for _ in range(3))
            if f in (s, t):
                continue
            seen.add((s, t, f))
        triples = sorted(seen)
    first_bad = None
    for (s, t, f) in triples:
        rep.queries += 1
        if args.mode == "reach":
            got = ft_reach_query(bundles[s], bundles[t], bundles[f])
            want = oracle_reach(view, s, t, f)
        else:
            got = ft_dist_query(bundles["vertices"][s], bundles["vertices"][t],
                                bundles["vertices"][f], {})
            want = oracle_dist(view, s, t, f)
        if _violation(args.mode, eps, want, got):
            rep.violations += 1
            if first_bad is None:
                first_bad = (s, t, f, str(want), str(got))
        else:
            rep.agreements += 1
    rep.seconds = time.time() - t0
    if first_bad is not None:
        s, t, f = first_bad[:3]
        small, (s2, t2, f2) = _minimize(g, (s, t, f), args.mode, eps)
        repro = {
            "graph": json.loads(small.to_json()),
            "triple": [s2, t2, f2],
            "mode": args.mode,
            "eps": args.eps,
            "want": first_bad[3], "got": first_bad[4],
        }
        out = args.repro or "violation_repro.json"
        with open(out, "w") as fh:
            json.dump(repro, fh, indent=1)
        rep.notes.append(f"counterexample written to {out}")
    print(rep.to_json())
    return 2 if rep.violations else 0


def cmd_stats(args) -> int:
    lf = LabelFile(args.labels)
    bits = [lf.record_bits(v) for v in range(lf.n)]
    rep = RunReport(graph={"n": lf.n})
    rep.set_label_stats(bits)
    print(rep.to_json())
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="planarft")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("--kind", required=True)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--weight-cap", type=int, default=1)
    g.add_argument("--deletion-p", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_gen)

    b = sub.add_parser("build", help="build labels from a graph file")
    b.add_argument("--mode", choices=["reach", "dist"], required=True)
    b.add_argument("--eps", default=None, help="rational p/q for dist mode")
    b.add_argument("--graph", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--dot", default=None,
                   help="also dump the decomposition tree as DOT")
    b.set_defaults(fn=cmd_build)

    q = sub.add_parser("query", help="answer one query from the label file")
    q.add_argument("--labels", required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--f", type=int, required=True)
    q.set_defaults(fn=cmd_query)

    z = sub.add_parser("fuzz", help="compare queries against the oracle")
    z.add_argument("--kind", required=True)
    z.add_argument("--size", type=int, required=True)
    z.add_argument("--weight-cap", type=int, default=1)
    z.add_argument("--deletion-p", type=float, default=0.0)
    z.add_argument("--mode", choices=["reach", "dist"], required=True)
    z.add_argument("--eps", default=None)
    z.add_argument("--trials", type=int, default=1000,
                   help="random triples; <= 0 means exhaustive")
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--repro", default=None)
    z.set_defaults(fn=cmd_fuzz)

    st = sub.add_parser("stats", help="label size statistics")
    st.add_argument("--labels", required=True)
    st.set_defaults(fn=cmd_stats)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
