"""Finite directed graphs: model, parser, vertex classification, paths."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .exactalg import ParseError


class GraphParseError(ParseError):
    pass


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Vertices and edges in declaration order, with source and range maps.

    Declaration order is the canonical order used for every tie-break
    downstream (special edges, basis order).
    """

    vertices: tuple
    edges: tuple
    source: dict = field(repr=False)
    range: dict = field(repr=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifier")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge identifier")
        vs = set(self.vertices)
        for e in self.edges:
            if self.source.get(e) not in vs or self.range.get(e) not in vs:
                raise ValueError(f"edge {e} has an undeclared endpoint")
        emitted = {v: [] for v in self.vertices}
        received = {v: [] for v in self.vertices}
        for e in self.edges:
            emitted[self.source[e]].append(e)
            received[self.range[e]].append(e)
        object.__setattr__(self, "_emitted", {v: tuple(es) for v, es in emitted.items()})
        object.__setattr__(self, "_received", {v: tuple(es) for v, es in received.items()})
        object.__setattr__(self, "_edge_index", {e: i for i, e in enumerate(self.edges)})
        object.__setattr__(self, "_vertex_index", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def from_edges(cls, vertices, edges) -> "DirectedGraph":
        """Build from ``vertices`` and ``(edge_id, source, range)`` triples."""
        edges = list(edges)
        return cls(
            tuple(vertices),
            tuple(e for e, _, _ in edges),
            {e: s for e, s, _ in edges},
            {e: r for e, _, r in edges},
        )

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.source == other.source
            and self.range == other.range
        )

    def __hash__(self):
        return hash((self.vertices, tuple((e, self.source[e], self.range[e]) for e in self.edges)))

    def emitted(self, v) -> tuple:
        return self._emitted[v]

    def received(self, v) -> tuple:
        return self._received[v]

    def edge_index(self, e) -> int:
        return self._edge_index[e]

    def vertex_index(self, v) -> int:
        return self._vertex_index[v]

    def has_vertex(self, v) -> bool:
        return v in self._vertex_index

    def has_edge(self, e) -> bool:
        return e in self._edge_index

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[self.range[e]] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for e in self.emitted(v):
                w = self.range[e]
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == len(self.vertices)

    def longest_path_length(self) -> int | None:
        """Length of the longest path, or None when the graph has a cycle."""
        if not self.is_acyclic():
            return None
        memo: dict = {}

        def depth(v):
            if v not in memo:
                memo[v] = max((1 + depth(self.range[e]) for e in self.emitted(v)), default=0)
            return memo[v]

        return max((depth(v) for v in self.vertices), default=0)

    def adjacency_matrix(self) -> list:
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        for e in self.edges:
            a[self.vertex_index(self.source[e])][self.vertex_index(self.range[e])] += 1
        return a


class Path(NamedTuple):
    """A path: start vertex plus edge sequence (empty = the vertex itself)."""

    start: str
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    def end(self, g: DirectedGraph) -> str:
        return g.range[self.edges[-1]] if self.edges else self.start


def parse_graph(text: str) -> DirectedGraph:
    vertices: list = []
    edges: list = []
    seen_v: set = set()
    seen_e: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphParseError(lineno, "expected 'vertex <id>'")
            v = parts[1]
            if v in seen_v:
                raise GraphParseError(lineno, f"duplicate vertex {v}")
            seen_v.add(v)
            vertices.append(v)
        elif kind == "edge":
            if len(parts) != 4:
                raise GraphParseError(lineno, "expected 'edge <id> <source> <range>'")
            _, e, s, r = parts
            if e in seen_e:
                raise GraphParseError(lineno, f"duplicate edge {e}")
            for endpoint in (s, r):
                if endpoint not in seen_v:
                    raise GraphParseError(lineno, f"unknown vertex {endpoint}")
            seen_e.add(e)
            edges.append((e, s, r))
        else:
            raise GraphParseError(lineno, f"unrecognised line {line!r}")
    return DirectedGraph.from_edges(vertices, edges)


def serialize_graph(g: DirectedGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e} {g.source[e]} {g.range[e]}" for e in g.edges]
    return "\n".join(lines) + "\n"


class VertexClasses(NamedTuple):
    sinks: frozenset
    sources: frozenset
    regular: frozenset


def classify_vertices(g: DirectedGraph) -> VertexClasses:
    # finite graphs have no infinite emitters, so regular == non-sink
    sinks = frozenset(v for v in g.vertices if not g.emitted(v))
    sources = frozenset(v for v in g.vertices if not g.received(v))
    regular = frozenset(v for v in g.vertices if g.emitted(v))
    return VertexClasses(sinks, sources, regular)


def sinks(g: DirectedGraph) -> list:
    """Sinks in declaration order."""
    return [v for v in g.vertices if not g.emitted(v)]


def enumerate_paths(g: DirectedGraph, max_length: int) -> dict:
    """All paths of length <= max_length, grouped by length.

    Order within a length is lexicographic in edge declaration order, with the
    length-0 paths listed in vertex order.
    """
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    out = {0: [Path(v, ()) for v in g.vertices]}
    layer = [Path(g.source[e], (e,)) for e in g.edges]
    for n in range(1, max_length + 1):
        out[n] = layer
        nxt = []
        for p in layer:
            for e in g.emitted(g.range[p.edges[-1]]):
                nxt.append(Path(p.start, p.edges + (e,)))
        layer = nxt
    return out


def rose(n: int, vertex: str = "v", prefix: str = "g") -> DirectedGraph:
    """One vertex with ``n`` loops named ``g1..gn``."""
    return DirectedGraph.from_edges([vertex], [(f"{prefix}{i}", vertex, vertex) for i in range(1, n + 1)])
