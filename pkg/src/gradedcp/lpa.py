"""Leavitt path algebras of finite graphs with exact rational coefficients.

Elements are finite combinations of monomials ``alpha beta*``.  A monomial is
stored as ``Monomial(alpha, beta, vertex)`` where ``alpha`` and ``beta`` are
edge tuples ending at ``vertex``; the vertex itself is ``((), (), v)``.

The normal form removes every monomial whose two paths both end in the special
edge ``sp(v)`` of the regular vertex ``v`` they leave from.  ``sp(v)`` is the
last edge emitted by ``v`` in declaration order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .exactalg import FdAlgebra, InputError, format_rational, parse_rational, vacc, vadd
from .graph import DirectedGraph, enumerate_paths


class Monomial(NamedTuple):
    alpha: tuple
    beta: tuple
    vertex: str

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    @property
    def total_length(self) -> int:
        return len(self.alpha) + len(self.beta)


class LeavittPathAlgebra:
    """L_Q(E) for a finite graph ``E``.

    Monomial products and normal forms are memoised; the tables only ever grow
    with values that are pure functions of their keys.
    """

    def __init__(self, graph: DirectedGraph):
        self.graph = graph
        self.special = {v: graph.emitted(v)[-1] for v in graph.vertices if graph.emitted(v)}
        self._nf_cache: dict = {}
        self._prod_cache: dict = {}

    # -- monomials ---------------------------------------------------------

    def _path_ok(self, path: tuple) -> bool:
        g = self.graph
        if not all(g.has_edge(e) for e in path):
            return False
        return all(g.range[a] == g.source[b] for a, b in zip(path, path[1:]))

    def monomial(self, alpha: Iterable = (), beta: Iterable = (), vertex: str | None = None) -> Monomial:
        """Validated monomial ``alpha beta*``; ``vertex`` is needed only when both are empty."""
        alpha, beta = tuple(alpha), tuple(beta)
        if not self._path_ok(alpha) or not self._path_ok(beta):
            raise InputError(f"not a path: {alpha or beta}")
        g = self.graph
        ends = {g.range[p[-1]] for p in (alpha, beta) if p}
        if vertex is not None:
            if not g.has_vertex(vertex):
                raise InputError(f"unknown vertex {vertex}")
            ends.add(vertex)
        if len(ends) != 1:
            raise InputError(f"ranges do not match in {alpha}{beta}*")
        return Monomial(alpha, beta, ends.pop())

    def start(self, path: tuple, vertex: str) -> str:
        return self.graph.source[path[0]] if path else vertex

    def sort_key(self, m: Monomial):
        ei = self.graph.edge_index
        return (
            m.total_length,
            tuple(ei(e) for e in m.alpha),
            tuple(ei(e) for e in m.beta),
            self.graph.vertex_index(m.vertex),
        )

    def is_reducible(self, m: Monomial) -> bool:
        if not m.alpha or not m.beta:
            return False
        e = m.alpha[-1]
        return e == m.beta[-1] and self.special.get(self.graph.source[e]) == e

    def _rewrite(self, m: Monomial) -> list:
        """One CK2 step at the junction of ``m``: list of (monomial, coeff)."""
        e = m.alpha[-1]
        u = self.graph.source[e]
        a, b = m.alpha[:-1], m.beta[:-1]
        out = [(Monomial(a, b, u), Fraction(1))]
        for f in self.graph.emitted(u):
            if f != e:
                out.append((Monomial(a + (f,), b + (f,), self.graph.range[f]), Fraction(-1)))
        return out

    def normalize_monomial(self, m: Monomial) -> dict:
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        if not self.is_reducible(m):
            res = {m: Fraction(1)}
        else:
            res: dict = {}
            for mm, c in self._rewrite(m):
                if self.is_reducible(mm):
                    vacc(res, self.normalize_monomial(mm), c)
                else:
                    vacc(res, {mm: c})
        self._nf_cache[m] = res
        return res

    def monomial_product(self, m1: Monomial, m2: Monomial) -> dict:
        key = (m1, m2)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        a1, b1, v1 = m1
        a2, b2, v2 = m2
        res: dict = {}
        if self.start(b1, v1) == self.start(a2, v2):
            if len(a2) >= len(b1):
                if a2[: len(b1)] == b1:
                    res = self.normalize_monomial(Monomial(a1 + a2[len(b1):], b2, v2))
            elif b1[: len(a2)] == a2:
                res = self.normalize_monomial(Monomial(a1, b2 + b1[len(a2):], v1))
        self._prod_cache[key] = res
        return res

    # -- elements ----------------------------------------------------------

    def element(self, terms: dict | None = None) -> "LpaElement":
        """Element from a dict of monomials in normal form (no rewriting)."""
        return LpaElement(self, {m: Fraction(c) for m, c in (terms or {}).items() if c})

    def normal_form(self, raw, strategy: str = "left") -> "LpaElement":
        """Normalise a formal combination (dict or (monomial, coeff) pairs).

        ``strategy`` picks the reducible monomial rewritten next: the first
        (``left``) or last (``right``) one in the canonical monomial order.
        Both must agree; the tests use this as a confluence check.
        """
        if strategy not in ("left", "right"):
            raise InputError(f"unknown strategy {strategy!r}")
        items = raw.items() if isinstance(raw, dict) else raw
        cur: dict = {}
        for m, c in items:
            m = m if isinstance(m, Monomial) else Monomial(*m)
            self.monomial(m.alpha, m.beta, m.vertex)  # validation
            vacc(cur, {m: Fraction(c)})
        while True:
            red = [m for m in cur if self.is_reducible(m)]
            if not red:
                return LpaElement(self, cur)
            red.sort(key=self.sort_key)
            m = red[0] if strategy == "left" else red[-1]
            c = cur.pop(m)
            for mm, d in self._rewrite(m):
                vacc(cur, {mm: c * d})

    def multiply(self, x: "LpaElement", y: "LpaElement") -> "LpaElement":
        if x.alg is not self or y.alg is not self:
            raise InputError("elements belong to different algebras")
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                p = self.monomial_product(m1, m2)
                if p:
                    vacc(out, p, c1 * c2)
        return LpaElement(self, out)

    def star(self, x: "LpaElement") -> "LpaElement":
        # the normal-form condition is symmetric in alpha and beta
        return LpaElement(self, {Monomial(m.beta, m.alpha, m.vertex): c for m, c in x.terms.items()})

    def zero(self) -> "LpaElement":
        return LpaElement(self, {})

    def one(self) -> "LpaElement":
        return LpaElement(self, {Monomial((), (), v): Fraction(1) for v in self.graph.vertices})

    def vertex(self, v: str) -> "LpaElement":
        return self.element({self.monomial(vertex=v): 1})

    def edge(self, e: str) -> "LpaElement":
        return self.element({self.monomial((e,)): 1})

    def ghost(self, e: str) -> "LpaElement":
        return self.element({self.monomial((), (e,)): 1})

    def path(self, alpha, beta=()) -> "LpaElement":
        return self.normal_form({self.monomial(alpha, beta): 1})

    # -- literal syntax ----------------------------------------------------

    def render_monomial(self, m: Monomial) -> str:
        if not m.alpha and not m.beta:
            return m.vertex
        return ".".join(list(m.alpha) + [e + "*" for e in reversed(m.beta)])

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if self.graph.has_vertex(text):
            return self.monomial(vertex=text)
        alpha, ghosts = [], []
        for tok in text.split("."):
            if tok.endswith("*"):
                ghosts.append(tok[:-1])
            elif ghosts:
                raise InputError(f"real edge after ghost edge in {text!r}")
            else:
                alpha.append(tok)
        for e in alpha + ghosts:
            if not self.graph.has_edge(e):
                raise InputError(f"unknown edge {e!r} in {text!r}")
        return self.monomial(alpha, reversed(ghosts))

    def render(self, x: "LpaElement") -> str:
        if not x.terms:
            return "0"
        parts = []
        for m in sorted(x.terms, key=self.sort_key):
            c = x.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = self.render_monomial(m) if a == 1 else f"{format_rational(a)}*{self.render_monomial(m)}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(r"\s*([+-]?)\s*([^+\-\s][^+\-]*)")

    def parse(self, text: str) -> "LpaElement":
        """Parse the element literal syntax, e.g. ``v2 - 3/2*f1.f1*``."""
        text = text.strip()
        if text == "0":
            return self.zero()
        if not text:
            raise InputError("empty element literal")
        pos, raw = 0, []
        while pos < len(text):
            mt = self._TERM.match(text, pos)
            if not mt or (pos > 0 and not mt.group(1)):
                raise InputError(f"cannot parse element literal at {text[pos:]!r}")
            sign = -1 if mt.group(1) == "-" else 1
            body = mt.group(2).strip()
            coeff = Fraction(1)
            if "*" in body and re.match(r"^\d+(/\d+)?\*", body):
                lit, body = body.split("*", 1)
                coeff = parse_rational(lit)
            raw.append((self.parse_monomial(body), sign * coeff))
            pos = mt.end()
        return self.normal_form(raw)


class LpaElement:
    """Immutable normal-form element; arithmetic goes through the algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LeavittPathAlgebra, terms: dict):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, LpaElement):
            if other.alg is not self.alg:
                raise InputError("elements belong to different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return LpaElement(self.alg, {m: Fraction(other) * c for m, c in self.alg.one().terms.items()})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LpaElement(self.alg, vadd(self.terms, o.terms))

    __radd__ = __add__

    def __neg__(self):
        return LpaElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LpaElement(self.alg, vadd(self.terms, o.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LpaElement(self.alg, {m: c * other for m, c in self.terms.items()})
        if isinstance(other, LpaElement):
            return self.alg.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LpaElement(self.alg, {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def star(self) -> "LpaElement":
        return self.alg.star(self)

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def degree(self):
        """The degree of a nonzero homogeneous element, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def __repr__(self):
        return self.alg.render(self)

    __str__ = __repr__


# ---------------------------------------------------------------------------
# graded pieces


def graded_spanning_set(g: DirectedGraph | LeavittPathAlgebra, d: int, L: int):
    """Normal-form monomials of degree ``d`` with total length <= ``L``.

    Returns ``(monomials, exact)``.  Normal-form monomials are linearly
    independent, so the list is a basis of its span; ``exact`` says it is all
    of S_d (acyclic graph and ``L`` at least twice the longest path).
    """
    alg = g if isinstance(g, LeavittPathAlgebra) else LeavittPathAlgebra(g)
    graph = alg.graph
    if L < abs(d):
        raise InputError(f"length bound {L} below |degree| {abs(d)}")
    paths = enumerate_paths(graph, (L + abs(d)) // 2)
    by_end: dict = {}
    for n, ps in paths.items():
        for p in ps:
            by_end.setdefault((n, p.end(graph)), []).append(p.edges)
    out = []
    lb = max(0, -d)
    while lb + (lb + d) <= L:
        la = lb + d
        for v in graph.vertices:
            for a in by_end.get((la, v), ()):
                for b in by_end.get((lb, v), ()):
                    m = Monomial(a, b, v)
                    if not alg.is_reducible(m):
                        out.append(m)
        lb += 1
    out.sort(key=alg.sort_key)
    longest = graph.longest_path_length()
    exact = longest is not None and L >= 2 * longest
    return out, exact


@dataclass
class GradedSlice:
    """Truncated view of the graded pieces S_d for |d| <= D.

    Spanning sets are built lazily per degree.  For acyclic graphs the slice
    upgrades ``L`` to cover the whole algebra, so every piece is exact.
    """

    graph: DirectedGraph
    D: int = 4
    L: int = 8
    alg: LeavittPathAlgebra | None = None
    auto_exact: bool = True
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.alg is None:
            self.alg = LeavittPathAlgebra(self.graph)
        longest = self.graph.longest_path_length()
        if self.auto_exact and longest is not None:
            self.L = max(self.L, 2 * longest, self.D)

    @property
    def exact(self) -> bool:
        longest = self.graph.longest_path_length()
        return longest is not None and self.L >= 2 * longest

    @property
    def bounds(self) -> tuple:
        return (self.D, self.L)

    def monomials(self, d: int) -> list:
        if d not in self._cache:
            if abs(d) > self.L:
                self._cache[d] = []
            else:
                self._cache[d] = graded_spanning_set(self.alg, d, self.L)[0]
        return self._cache[d]

    def spanning(self, d: int) -> list:
        return [self.alg.element({m: 1}) for m in self.monomials(d)]

    def dim(self, d: int) -> int:
        """Dimension of S_d (exact slices) or of its truncation."""
        return len(self.monomials(d))

    def max_degree(self) -> int | None:
        longest = self.graph.longest_path_length()
        return longest


# ---------------------------------------------------------------------------
# the standard Leavitt path system


class LpaTarget:
    """Adapter presenting a Leavitt path algebra as a graded target ring."""

    def __init__(self, alg: LeavittPathAlgebra, slice_: GradedSlice | None = None):
        self.alg = alg
        self.slice = slice_

    def zero(self):
        return self.alg.zero()

    def one(self):
        return self.alg.one()

    def degree(self, x: LpaElement):
        return x.degree()

    def coords(self, x: LpaElement) -> dict:
        return dict(x.terms)

    def render(self, x: LpaElement) -> str:
        return self.alg.render(x)

    def spanning(self, d: int) -> list | None:
        if self.slice is None or not self.slice.exact:
            return None
        return self.slice.spanning(d)

    def surjectivity_targets(self, bound: int) -> list:
        """Every normal-form monomial of total length <= bound (any degree)."""
        out = []
        for d in range(-bound, bound + 1):
            out += [self.alg.element({m: 1}) for m in graded_spanning_set(self.alg, d, bound)[0]]
        return out


def standard_system(g: DirectedGraph, alg: LeavittPathAlgebra | None = None):
    """The R-system of a graph: R on vertices, Q on edges, P on ghost edges.

    The result carries its canonical covariant representation into L(E)
    (``sigma(v) = v``, ``T(f) = f``, ``S(f*) = f*``).
    """
    from .rsystem import CovariantRep, FdBimodule, RSystem

    one = Fraction(1)
    vi = g.vertex_index
    n = len(g.vertices)
    ring = FdAlgebra(
        n,
        {(i, i): {i: one} for i in range(n)},
        tuple(one for _ in range(n)),
        labels=tuple(g.vertices),
    )
    m = len(g.edges)
    q_left = {(vi(g.source[f]), k): {k: one} for k, f in enumerate(g.edges)}
    q_right = {(k, vi(g.range[f])): {k: one} for k, f in enumerate(g.edges)}
    p_left = {(vi(g.range[f]), k): {k: one} for k, f in enumerate(g.edges)}
    p_right = {(k, vi(g.source[f])): {k: one} for k, f in enumerate(g.edges)}
    Q = FdBimodule(m, q_left, q_right, labels=tuple(g.edges))
    P = FdBimodule(m, p_left, p_right, labels=tuple(f + "*" for f in g.edges))
    psi = {(k, k): {vi(g.range[f]): one} for k, f in enumerate(g.edges)}
    sys_ = RSystem(ring, P, Q, psi)
    alg = alg or LeavittPathAlgebra(g)
    sys_.canonical = CovariantRep(
        LpaTarget(alg, GradedSlice(g, alg=alg) if g.is_acyclic() else None),
        sigma=[alg.vertex(v) for v in g.vertices],
        S=[alg.ghost(f) for f in g.edges],
        T=[alg.edge(f) for f in g.edges],
    )
    return sys_
