"""Exhaustive small-graph corpus."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import DirectedGraph
from .lpa import GradedSlice


@dataclass(frozen=True)
class CorpusBounds:
    max_vertices: int = 3
    max_edges: int = 3
    cyclic_D: int = 2
    cyclic_L: int = 8


def _canonical(n: int, pairs: tuple) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in pairs))
        if best is None or key < best:
            best = key
    return best


def enumerate_graphs(max_vertices: int = 3, max_edges: int = 3) -> list:
    """Every graph with 1..max_vertices vertices and 0..max_edges edges, up to isomorphism.

    Parallel edges and loops are allowed.  Vertices are ``v1..vn`` and edges
    ``f1..fm`` in a canonical order, so the output is deterministic.
    """
    out = []
    for n in range(1, max_vertices + 1):
        slots = [(a, b) for a in range(n) for b in range(n)]
        seen = set()
        for m in range(max_edges + 1):
            for pairs in itertools.combinations_with_replacement(slots, m):
                key = _canonical(n, pairs)
                if key in seen:
                    continue
                seen.add(key)
                vs = [f"v{i + 1}" for i in range(n)]
                es = [(f"f{k + 1}", vs[a], vs[b]) for k, (a, b) in enumerate(key)]
                out.append(DirectedGraph.from_edges(vs, es))
    return out


def corpus_slice(g: DirectedGraph, bounds: CorpusBounds = CorpusBounds()) -> GradedSlice:
    """Exact slice for acyclic graphs, bounded (D, L) slice otherwise."""
    if g.is_acyclic():
        return GradedSlice(g)
    return GradedSlice(g, D=bounds.cyclic_D, L=bounds.cyclic_L)
