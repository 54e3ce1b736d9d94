"""Exact rational linear algebra and finite-dimensional algebra utilities.

Everything here works over :class:`fractions.Fraction`.  Vectors are either
dense tuples (for :class:`FdAlgebra` coordinates) or sparse ``dict`` maps from
an arbitrary hashable key to a nonzero coefficient.  The sparse form lets the
same elimination code run on coordinates indexed by path monomials.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vec = dict  # sparse vector: key -> nonzero Fraction


class InputError(ValueError):
    """Raised for malformed input or a violated precondition."""


class ParseError(InputError):
    """Input-file error tied to a 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ResourceError(RuntimeError):
    """A computation would exceed a configured size cap."""


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p``, ``p/q`` or ``-p/q``.  Floating point is rejected."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise InputError(f"not a rational literal: {text!r}")
    _, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# sparse vector helpers

def vadd(a: Vec, b: Vec, scale=1) -> Vec:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def vacc(out: Vec, b: Vec, scale=1) -> Vec:
    """In-place ``out += scale * b``; returns ``out``."""
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def vscale(a: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def dense_to_sparse(v: Sequence) -> Vec:
    return {i: Fraction(c) for i, c in enumerate(v) if c}


def sparse_to_dense(v: Vec, n: int) -> tuple:
    out = [Fraction(0)] * n
    for i, c in v.items():
        out[i] = Fraction(c)
    return tuple(out)


class Echelon:
    """Reduced row-echelon basis of a growing subspace.

    Rows are kept fully reduced against each other, so reducing a vector is a
    single pass over the pivots it touches.  The pivot of a new row is the
    smallest key of its support under ``order`` (default: natural ordering of
    the keys), which keeps bases deterministic.

    With ``track=True`` every row remembers which combination of the labelled
    input vectors produced it, so :meth:`express` can write a vector in terms
    of the inputs and :meth:`add` reports linear relations among them.
    """

    def __init__(self, order=None, track: bool = False):
        self.order = order
        self.track = track
        self.rows: dict = {}  # pivot -> row
        self.combos: dict = {}  # pivot -> {label: coeff}
        self.relations: list = []  # null combinations found while adding

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Vec):
        if self.order is None:
            return min(v)
        return min(v, key=self.order)

    def reduce(self, v: Vec, combo: Vec | None = None):
        """Return ``v`` reduced modulo the span (and the tracked combination)."""
        out = dict(v)
        comb = dict(combo) if combo is not None else None
        for p in [k for k in v if k in self.rows]:
            c = out.get(p)
            if not c:
                continue
            out = vadd(out, self.rows[p], -c)
            if comb is not None:
                comb = vadd(comb, self.combos[p], -c)
        return out, comb

    def add(self, v: Vec, label: Hashable = None) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        combo = {label: Fraction(1)} if self.track else None
        r, comb = self.reduce(v, combo)
        if not r:
            if self.track and comb:
                self.relations.append(comb)
            return False
        p = self._pivot(r)
        inv = 1 / Fraction(r[p])
        r = vscale(r, inv)
        if comb is not None:
            comb = vscale(comb, inv)
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c:
                self.rows[q] = vadd(row, r, -c)
                if self.track:
                    self.combos[q] = vadd(self.combos[q], comb, -c)
        self.rows[p] = r
        if self.track:
            self.combos[p] = comb
        return True

    def extend(self, vectors: Iterable[Vec]) -> "Echelon":
        for v in vectors:
            self.add(v)
        return self

    def contains(self, v: Vec) -> bool:
        r, _ = self.reduce(v)
        return not r

    __contains__ = contains

    def express(self, v: Vec):
        """Coefficients over the tracked labels reproducing ``v``, or None."""
        if not self.track:
            raise InputError("express() needs a tracking Echelon")
        r, comb = self.reduce(v, {})
        if r:
            return None
        # reduce subtracted the combination; flip the sign to rebuild v
        return vscale(comb, -1) if comb else {}

    def basis(self) -> list:
        if self.order is None:
            keys = sorted(self.rows)
        else:
            keys = sorted(self.rows, key=self.order)
        return [self.rows[k] for k in keys]


def span(vectors: Iterable[Vec], order=None) -> Echelon:
    return Echelon(order).extend(vectors)


def same_span(a: Echelon, b: Echelon) -> bool:
    return a.dim == b.dim and all(v in a for v in b.rows.values())


def intersect(a: Echelon, b: Echelon, order=None) -> Echelon:
    """Intersection of two subspaces via the Zassenhaus-style relation trick."""
    ab = a.basis()
    bb = b.basis()
    e = Echelon(order, track=True)
    for i, v in enumerate(ab):
        e.add(v, ("a", i))
    for j, v in enumerate(bb):
        e.add(v, ("b", j))
    out = Echelon(order)
    for rel in e.relations:
        w: Vec = {}
        for (side, idx), c in rel.items():
            if side == "a":
                w = vadd(w, ab[idx], c)
        out.add(w)
    return out


def nullspace(columns: Sequence[Vec]) -> list:
    """Basis of ``{x : sum_j x_j columns[j] = 0}`` as sparse dicts over j."""
    e = Echelon(track=True)
    for j, col in enumerate(columns):
        e.add(col, j)
    return e.relations


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence):
    """Return some exact solution ``x`` of ``matrix @ x = rhs`` or None.

    Free variables are set to zero.
    """
    rows = len(matrix)
    if rows != len(rhs):
        raise InputError(f"matrix has {rows} rows but rhs has length {len(rhs)}")
    ncols = len(matrix[0]) if rows else 0
    if any(len(r) != ncols for r in matrix):
        raise InputError("ragged matrix")
    e = Echelon(track=True)
    for j in range(ncols):
        e.add({i: Fraction(matrix[i][j]) for i in range(rows) if matrix[i][j]}, j)
    coeffs = e.express({i: Fraction(c) for i, c in enumerate(rhs) if c})
    if coeffs is None:
        return None
    return [Fraction(coeffs.get(j, 0)) for j in range(ncols)]


def solve_in_span(generators: Sequence[Vec], target: Vec):
    """Coefficients ``c`` with ``sum c_j generators[j] == target`` or None."""
    e = Echelon(track=True)
    for j, g in enumerate(generators):
        e.add(g, j)
    return e.express(target)


# ---------------------------------------------------------------------------
# finite-dimensional algebras

@dataclass
class FdAlgebra:
    """Finite-dimensional associative algebra over Q given by structure constants.

    ``table[(i, j)]`` is the sparse coordinate vector of ``b_i * b_j``; missing
    pairs multiply to zero.  ``unit`` is an optional dense coordinate vector.
    """

    dimension: int
    table: dict = field(default_factory=dict)
    unit: tuple | None = None
    labels: tuple | None = None

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.table.items():
            if not (0 <= i < self.dimension and 0 <= j < self.dimension):
                raise InputError(f"structure constant index ({i}, {j}) out of range")
            sv = dense_to_sparse(v) if not isinstance(v, dict) else {k: Fraction(c) for k, c in v.items() if c}
            if sv:
                clean[(i, j)] = sv
        self.table = clean
        self._left = {}
        for (i, j), v in clean.items():
            self._left.setdefault(i, {})[j] = v
        if self.unit is not None:
            if len(self.unit) != self.dimension:
                raise InputError("unit has wrong length")
            self.unit = tuple(Fraction(c) for c in self.unit)

    def basis_product(self, i: int, j: int) -> Vec:
        return self.table.get((i, j), {})

    def mul_sparse(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            row = self._left.get(i)
            if not row:
                continue
            for j, b in y.items():
                v = row.get(j)
                if v:
                    out = vadd(out, v, a * b)
        return out

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        self._check(x)
        self._check(y)
        return sparse_to_dense(self.mul_sparse(dense_to_sparse(x), dense_to_sparse(y)), self.dimension)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dimension))

    def zero(self) -> tuple:
        return (Fraction(0),) * self.dimension

    def _check(self, x: Sequence):
        if len(x) != self.dimension:
            raise InputError(f"vector of length {len(x)} in algebra of dimension {self.dimension}")

    def associativity_violation(self):
        """First basis triple with ``(b_i b_j) b_k != b_i (b_j b_k)``, or None."""
        n = self.dimension
        for i in range(n):
            for j in range(n):
                ij = self.basis_product(i, j)
                for k in range(n):
                    lhs = self.mul_sparse(ij, {k: Fraction(1)})
                    rhs = self.mul_sparse({i: Fraction(1)}, self.basis_product(j, k))
                    if lhs != rhs:
                        return (i, j, k)
        return None

    def unit_violation(self):
        if self.unit is None:
            return None
        u = dense_to_sparse(self.unit)
        for i in range(self.dimension):
            b = {i: Fraction(1)}
            if self.mul_sparse(u, b) != b or self.mul_sparse(b, u) != b:
                return i
        return None


def matrix_algebra(n: int) -> FdAlgebra:
    """The full matrix algebra M_n(Q) on matrix units E_ab (index a*n + b)."""
    table = {}
    for a in range(n):
        for b in range(n):
            for d in range(n):
                table[(a * n + b, b * n + d)] = {a * n + d: Fraction(1)}
    unit = tuple(Fraction(int(a == b)) for a in range(n) for b in range(n))
    return FdAlgebra(n * n, table, unit)


def upper_triangular_algebra() -> FdAlgebra:
    """Upper-triangular 2x2 matrices on the basis E11, E12, E22."""
    one = Fraction(1)
    table = {
        (0, 0): {0: one},
        (0, 1): {1: one},
        (1, 2): {1: one},
        (2, 2): {2: one},
    }
    return FdAlgebra(3, table, (one, 0, one))


def direct_sum(*algs: FdAlgebra) -> FdAlgebra:
    table = {}
    offset = 0
    unit: list | None = []
    for alg in algs:
        for (i, j), v in alg.table.items():
            table[(i + offset, j + offset)] = {k + offset: c for k, c in v.items()}
        if unit is not None and alg.unit is not None:
            unit.extend(alg.unit)
        else:
            unit = None
        offset += alg.dimension
    return FdAlgebra(offset, table, tuple(unit) if unit is not None else None)


_SIDES = {"two_sided", "left", "right"}


def ideal_closure(alg: FdAlgebra, generators: Sequence[Sequence], side: str = "two_sided") -> list:
    """Basis (echelonized, dense) of the smallest ideal containing ``generators``.

    Each pass multiplies the current basis by every algebra basis element on the
    permitted sides; the loop stops once the dimension stops growing.
    """
    if side not in _SIDES:
        raise InputError(f"unknown side {side!r}")
    for g in generators:
        alg._check(g)
    e = span(dense_to_sparse(g) for g in generators)
    units = [{i: Fraction(1)} for i in range(alg.dimension)]
    while True:
        before = e.dim
        for v in list(e.rows.values()):
            for b in units:
                if side in ("two_sided", "left"):
                    e.add(alg.mul_sparse(b, v))
                if side in ("two_sided", "right"):
                    e.add(alg.mul_sparse(v, b))
        if e.dim == before:
            break
    return [sparse_to_dense(v, alg.dimension) for v in e.basis()]


def closure_violation(alg: FdAlgebra, basis: Sequence[Sequence]):
    """First product ``b_i * x`` or ``x * b_i`` leaving ``span(basis)``, or None."""
    e = span(dense_to_sparse(x) for x in basis)
    for x in basis:
        sx = dense_to_sparse(x)
        for i in range(alg.dimension):
            b = {i: Fraction(1)}
            for name, prod in (("left", alg.mul_sparse(b, sx)), ("right", alg.mul_sparse(sx, b))):
                if prod not in e:
                    return name, i, tuple(x)
    return None


def unit_of_ideal(alg: FdAlgebra, ideal_basis: Sequence[Sequence]):
    """Two-sided unit of the ideal spanned by ``ideal_basis``, or None.

    For a finite-dimensional ideal, s-unital and unital coincide, so a None
    result also certifies the ideal is not s-unital.
    """
    bad = closure_violation(alg, ideal_basis)
    if bad is not None:
        side, i, x = bad
        raise InputError(f"not an ideal: {side} product of basis {i} with {x} leaves the span")
    basis = [dense_to_sparse(x) for x in ideal_basis]
    if not basis:
        return alg.zero()
    # unknown u = sum c_k basis_k; equations u*x = x and x*u = x for all x
    columns = []
    for bk in basis:
        col = {}
        for j, x in enumerate(basis):
            for key, c in alg.mul_sparse(bk, x).items():
                col[("l", j, key)] = c
            for key, c in alg.mul_sparse(x, bk).items():
                col[("r", j, key)] = c
        columns.append(col)
    rhs = {}
    for j, x in enumerate(basis):
        for key, c in x.items():
            rhs[("l", j, key)] = c
            rhs[("r", j, key)] = c
    coeffs = solve_in_span(columns, rhs)
    if coeffs is None:
        return None
    u: Vec = {}
    for k, c in coeffs.items():
        u = vadd(u, basis[k], c)
    return sparse_to_dense(u, alg.dimension)


def _trace_left(alg: FdAlgebra, x: Vec) -> Fraction:
    """Trace of left multiplication by ``x``."""
    tr = Fraction(0)
    for i, a in x.items():
        row = alg._left.get(i, {})
        for j, v in row.items():
            c = v.get(j)
            if c:
                tr += a * c
    return tr


def radical(alg: FdAlgebra) -> list:
    """Basis of the Jacobson radical (characteristic zero trace criterion).

    ``x`` is radical iff ``tr(L_x) = 0`` and ``tr(L_{a x}) = 0`` for every basis
    element ``a``; the first condition stands in for ``a = 1`` when the algebra
    has no unit.  Invalid in positive characteristic.
    """
    n = alg.dimension
    # each condition is a linear functional of x: collect them as rows
    functionals = []
    functionals.append({i: _trace_left(alg, {i: Fraction(1)}) for i in range(n)})
    for a in range(n):
        functionals.append({i: _trace_left(alg, alg.basis_product(a, i)) for i in range(n)})
    # x in radical iff every functional vanishes: nullspace of the matrix rows
    cols = []
    for i in range(n):
        cols.append({r: f[i] for r, f in enumerate(functionals) if f.get(i)})
    null = nullspace(cols)
    return [sparse_to_dense(v, n) for v in span(null).basis()]


def is_semiprime(alg: FdAlgebra) -> bool:
    return not radical(alg)
