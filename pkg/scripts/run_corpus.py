#!/usr/bin/env python3
"""Classify every small graph and print one TSV row per graph.

Columns: graph index, vertices, edges, sinks, strongly, pre_cp, and whether
the sink criterion agrees with the certified verdict.
"""
from __future__ import annotations

import argparse
import sys
import time

from gradedcp.corpus import CorpusBounds, corpus_slice, enumerate_graphs
from gradedcp.grading import annihilator_of_degree_one, classify
from gradedcp.graph import sinks
from gradedcp.verdict import CERTIFIED_NO, CERTIFIED_YES


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=3)
    ap.add_argument("--max-edges", type=int, default=3)
    ap.add_argument("--cyclic-length", type=int, default=8, help="length bound for graphs with cycles")
    args = ap.parse_args(argv)
    bounds = CorpusBounds(args.max_vertices, args.max_edges, cyclic_L=args.cyclic_length)
    t0 = time.perf_counter()
    graphs = enumerate_graphs(bounds.max_vertices, bounds.max_edges)
    print("idx\tvertices\tedges\tsinks\tstrongly\tpre_cp\tagrees")
    mismatches = 0
    for k, g in enumerate(graphs):
        sl = corpus_slice(g, bounds)
        vs = classify(sl)
        pre = annihilator_of_degree_one(sl, vs).pre_cp
        strong = vs["strongly"].status
        want = CERTIFIED_NO if sinks(g) else CERTIFIED_YES
        agrees = strong == want and vs["strongly"].recheck()
        mismatches += not agrees
        edges = ",".join(f"{g.source[e]}>{g.range[e]}" for e in g.edges) or "-"
        print(f"{k}\t{len(g.vertices)}\t{edges}\t{','.join(sinks(g)) or '-'}\t{strong}\t{pre.status}\t{agrees}")
    print(f"# {len(graphs)} graphs, {mismatches} mismatches, {time.perf_counter() - t0:.1f} s", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
