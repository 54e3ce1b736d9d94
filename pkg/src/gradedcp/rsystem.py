"""Finite-dimensional R-systems over the rationals.

A system is a ring ``R`` (an :class:`FdAlgebra`), two bimodules ``P`` and ``Q``
given by action tables, and a pairing ``psi: P x Q -> R``.  Ring, module and
operator elements are sparse dicts over basis indices; operators are sparse
matrices ``{(row, col): coeff}`` acting on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

from .exactalg import (
    Echelon,
    FdAlgebra,
    InputError,
    ParseError,
    ResourceError,
    closure_violation,
    dense_to_sparse,
    format_rational,
    intersect,
    nullspace,
    parse_rational,
    solve_in_span,
    span,
    sparse_to_dense,
    vacc,
)
from .verdict import CERTIFIED_YES, INCONCLUSIVE, GradedVerdict

DEFAULT_CAP = 512
ONE = Fraction(1)


def unit(i: int) -> dict:
    return {i: ONE}


# ---------------------------------------------------------------------------
# bimodules and systems


@dataclass
class FdBimodule:
    """Bimodule over an FdAlgebra: ``left[(r, m)]`` is ``b_r * m_m`` and
    ``right[(m, r)]`` is ``m_m * b_r``; missing entries are zero."""

    dimension: int
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)
    labels: tuple | None = None

    def __post_init__(self):
        self.left = {k: _clean(v) for k, v in self.left.items() if _clean(v)}
        self.right = {k: _clean(v) for k, v in self.right.items() if _clean(v)}
        self._l: dict = {}
        self._r: dict = {}
        for (r, m), v in self.left.items():
            self._l.setdefault(m, {})[r] = v
        for (m, r), v in self.right.items():
            self._r.setdefault(m, {})[r] = v

    def act_left(self, r: dict, m: dict) -> dict:
        out: dict = {}
        for j, b in m.items():
            row = self._l.get(j)
            if row:
                for i, a in r.items():
                    v = row.get(i)
                    if v:
                        vacc(out, v, a * b)
        return out

    def act_right(self, m: dict, r: dict) -> dict:
        out: dict = {}
        for j, b in m.items():
            row = self._r.get(j)
            if row:
                for i, a in r.items():
                    v = row.get(i)
                    if v:
                        vacc(out, v, a * b)
        return out

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"m{i + 1}"


def _clean(v) -> dict:
    if isinstance(v, dict):
        return {k: Fraction(c) for k, c in v.items() if c}
    return dense_to_sparse(v)


@dataclass(eq=False)
class RSystem:
    ring: FdAlgebra
    P: FdBimodule
    Q: FdBimodule
    psi: dict = field(default_factory=dict)
    canonical: Any = None  # optional CovariantRep into a concrete ring
    tensor: Any = None  # (P-tensor, Q-tensor) data for tensor powers
    power: int = 1

    def __post_init__(self):
        self.psi = {k: _clean(v) for k, v in self.psi.items() if _clean(v)}
        self._powers: dict = {}

    def psi_apply(self, p: dict, q: dict) -> dict:
        out: dict = {}
        for i, a in p.items():
            for j, b in q.items():
                v = self.psi.get((i, j))
                if v:
                    vacc(out, v, a * b)
        return out

    @property
    def unit(self) -> dict | None:
        u = self.ring.unit
        return None if u is None else dense_to_sparse(u)

    def ring_label(self, i: int) -> str:
        return self.ring.labels[i] if self.ring.labels else f"r{i + 1}"


class Violation(NamedTuple):
    kind: str
    indices: tuple
    detail: str = ""


def validate_system(sys_: RSystem) -> Violation | None:
    """First failed axiom of an R-system on basis elements, or None."""
    R = sys_.ring
    n = R.dimension
    bad = R.associativity_violation()
    if bad is not None:
        return Violation("ring_associativity", bad)
    if R.unit_violation() is not None:
        return Violation("ring_unit", (R.unit_violation(),))
    for name, M in (("P", sys_.P), ("Q", sys_.Q)):
        for m in range(M.dimension):
            em = unit(m)
            for a in range(n):
                for b in range(n):
                    ab = R.basis_product(a, b)
                    if M.act_left(ab, em) != M.act_left(unit(a), M.act_left(unit(b), em)):
                        return Violation(f"{name}_left_assoc", (a, b, m))
                    if M.act_right(em, ab) != M.act_right(M.act_right(em, unit(a)), unit(b)):
                        return Violation(f"{name}_right_assoc", (m, a, b))
                    if M.act_right(M.act_left(unit(a), em), unit(b)) != M.act_left(unit(a), M.act_right(em, unit(b))):
                        return Violation(f"{name}_commute", (a, m, b))
    P, Q = sys_.P, sys_.Q
    for p in range(P.dimension):
        for q in range(Q.dimension):
            base = sys_.psi_apply(unit(p), unit(q))
            for r in range(n):
                er = unit(r)
                if sys_.psi_apply(P.act_right(unit(p), er), unit(q)) != sys_.psi_apply(unit(p), Q.act_left(er, unit(q))):
                    return Violation("psi_balanced", (p, r, q), "psi(p.r x q) != psi(p x r.q)")
                if sys_.psi_apply(P.act_left(er, unit(p)), unit(q)) != R.mul_sparse(er, base):
                    return Violation("psi_left_linear", (r, p, q))
                if sys_.psi_apply(unit(p), Q.act_right(unit(q), er)) != R.mul_sparse(base, er):
                    return Violation("psi_right_linear", (p, q, r))
    return None


def is_unital(sys_: RSystem) -> bool:
    """Ring has a unit that acts as the identity on both sides of P and Q."""
    u = sys_.unit
    if u is None or sys_.ring.unit_violation() is not None:
        return False
    for M in (sys_.P, sys_.Q):
        for m in range(M.dimension):
            if M.act_left(u, unit(m)) != unit(m) or M.act_right(unit(m), u) != unit(m):
                return False
    return True


def ring_bimodule(R: FdAlgebra) -> FdBimodule:
    return FdBimodule(
        R.dimension,
        {(i, j): v for (i, j), v in R.table.items()},
        {(i, j): v for (i, j), v in R.table.items()},
        labels=R.labels,
    )


# ---------------------------------------------------------------------------
# balanced tensor products and tensor powers


class BalancedTensor:
    """``M (x)_R N`` as the plain tensor product modulo the balancing relations.

    The quotient basis is the set of plain pairs ``(i, j)`` that are not pivots
    of the relation space; :meth:`project` reduces any plain tensor onto it.
    """

    def __init__(self, R: FdAlgebra, M: FdBimodule, N: FdBimodule, cap: int = DEFAULT_CAP):
        if M.dimension * N.dimension > cap:
            raise ResourceError(f"plain tensor dimension {M.dimension * N.dimension} exceeds cap {cap}")
        self.M, self.N, self.R = M, N, R
        rel = Echelon()
        for i in range(M.dimension):
            for r in range(R.dimension):
                mr = M.act_right(unit(i), unit(r))
                for j in range(N.dimension):
                    v: dict = {}
                    for k, c in mr.items():
                        vacc(v, {(k, j): c})
                    for k, c in N.act_left(unit(r), unit(j)).items():
                        vacc(v, {(i, k): -c})
                    if v:
                        rel.add(v)
        self.relations = rel
        self.pairs = [(i, j) for i in range(M.dimension) for j in range(N.dimension) if (i, j) not in rel.rows]
        self.index = {p: n for n, p in enumerate(self.pairs)}

    @property
    def dimension(self) -> int:
        return len(self.pairs)

    def project(self, plain: dict) -> dict:
        red, _ = self.relations.reduce(plain)
        return {self.index[k]: c for k, c in red.items()}

    def pure(self, m: dict, n: dict) -> dict:
        plain = {}
        for i, a in m.items():
            for j, b in n.items():
                plain[(i, j)] = plain.get((i, j), 0) + a * b
        return self.project({k: c for k, c in plain.items() if c})

    def module(self) -> FdBimodule:
        left, right = {}, {}
        for idx, (i, j) in enumerate(self.pairs):
            for r in range(self.R.dimension):
                lv = self.pure(self.M.act_left(unit(r), unit(i)), unit(j))
                if lv:
                    left[(r, idx)] = lv
                rv = self.pure(unit(i), self.N.act_right(unit(j), unit(r)))
                if rv:
                    right[(idx, r)] = rv
        labels = None
        if self.M.labels or self.N.labels:
            labels = tuple(f"{self.M.label(i)}(x){self.N.label(j)}" for i, j in self.pairs)
        return FdBimodule(self.dimension, left, right, labels)


def tensor_power(sys_: RSystem, n: int, cap: int = DEFAULT_CAP) -> RSystem:
    """The system ``(P^(x)n, Q^(x)n, psi_n)``.

    ``P^(x)n = P (x) P^(x)(n-1)`` and ``Q^(x)n = Q^(x)(n-1) (x) Q`` so that
    ``psi_n((p1 (x) x) (x) (y (x) q1)) = psi(p1 . psi_(n-1)(x (x) y) (x) q1)``.
    Results are cached on the system.
    """
    if n < 0:
        raise InputError("tensor power must be non-negative")
    if n == 1:
        return sys_
    if n in sys_._powers:
        return sys_._powers[n]
    R = sys_.ring
    if n == 0:
        M = ring_bimodule(R)
        out = RSystem(R, M, M, dict(R.table), power=0)
    else:
        prev = tensor_power(sys_, n - 1, cap)
        PT = BalancedTensor(R, sys_.P, prev.P, cap)
        QT = BalancedTensor(R, prev.Q, sys_.Q, cap)
        psi = {}
        for a, (p1, x) in enumerate(PT.pairs):
            for b, (y, q1) in enumerate(QT.pairs):
                r = prev.psi_apply(unit(x), unit(y))
                if r:
                    v = sys_.psi_apply(sys_.P.act_right(unit(p1), r), unit(q1))
                    if v:
                        psi[(a, b)] = v
        out = RSystem(R, PT.module(), QT.module(), psi, tensor=(PT, QT), power=n)
    sys_._powers[n] = out
    return out


# ---------------------------------------------------------------------------
# operators


def identity_op(n: int) -> dict:
    return {(i, i): ONE for i in range(n)}


def apply_op(M: dict, v: dict) -> dict:
    out: dict = {}
    for (i, j), c in M.items():
        x = v.get(j)
        if x:
            out[i] = out.get(i, 0) + c * x
    return {k: c for k, c in out.items() if c}


def compose(A: dict, B: dict) -> dict:
    """Matrix of ``A o B``."""
    by_row: dict = {}
    for (k, j), c in B.items():
        by_row.setdefault(k, []).append((j, c))
    out: dict = {}
    for (i, k), a in A.items():
        for j, b in by_row.get(k, ()):
            vacc(out, {(i, j): a * b})
    return out


def op_from_columns(columns: Sequence[dict]) -> dict:
    return {(i, j): c for j, col in enumerate(columns) for i, c in col.items()}


def op_add(A: dict, B: dict, scale=1) -> dict:
    return vacc(dict(A), B, scale)


@dataclass
class OperatorSpan:
    """Span of labelled generator operators on a module of dimension ``dim``."""

    module: str
    dim: int
    generators: list  # (label, matrix)
    echelon: Echelon = field(init=False, repr=False)

    def __post_init__(self):
        self.echelon = Echelon(track=True)
        for k, (_, M) in enumerate(self.generators):
            self.echelon.add(M, k)

    @property
    def dimension(self) -> int:
        return self.echelon.dim

    def contains(self, M: dict) -> bool:
        return self.echelon.contains(M)

    def express(self, M: dict):
        """``{generator position: coeff}`` reproducing ``M``, or None."""
        return self.echelon.express(M)

    def combine(self, coeffs: dict) -> dict:
        out: dict = {}
        for k, c in coeffs.items():
            vacc(out, self.generators[k][1], c)
        return out

    def relations(self) -> list:
        return self.echelon.relations


def theta_q(sys_: RSystem, q: dict, p: dict) -> dict:
    """``theta_{q,p}(x) = q . psi(p (x) x)`` on Q."""
    cols = [sys_.Q.act_right(q, sys_.psi_apply(p, unit(j))) for j in range(sys_.Q.dimension)]
    return op_from_columns(cols)


def theta_p(sys_: RSystem, p: dict, q: dict) -> dict:
    """``theta_{p,q}(y) = psi(y (x) q) . p`` on P."""
    cols = [sys_.P.act_left(sys_.psi_apply(unit(j), q), p) for j in range(sys_.P.dimension)]
    return op_from_columns(cols)


def operator_spans(sys_: RSystem) -> tuple:
    """``(F_P(Q), F_Q(P))`` spanned by theta operators on basis pairs.

    Generator labels are ``(q, p)`` for F_P(Q) and ``(p, q)`` for F_Q(P).
    """
    cache = sys_._powers.get("spans")
    if cache is not None:
        return cache
    P, Q = sys_.P, sys_.Q
    fq = [((a, b), theta_q(sys_, unit(a), unit(b))) for a in range(Q.dimension) for b in range(P.dimension)]
    fp = [((b, a), theta_p(sys_, unit(b), unit(a))) for b in range(P.dimension) for a in range(Q.dimension)]
    out = (OperatorSpan("Q", Q.dimension, fq), OperatorSpan("P", P.dimension, fp))
    sys_._powers["spans"] = out
    return out


def is_right_hom(sys_: RSystem, T: dict) -> bool:
    Q = sys_.Q
    for q in range(Q.dimension):
        for r in range(sys_.ring.dimension):
            if apply_op(T, Q.act_right(unit(q), unit(r))) != Q.act_right(apply_op(T, unit(q)), unit(r)):
                return False
    return True


def is_left_hom(sys_: RSystem, S: dict) -> bool:
    P = sys_.P
    for p in range(P.dimension):
        for r in range(sys_.ring.dimension):
            if apply_op(S, P.act_left(unit(r), unit(p))) != P.act_left(unit(r), apply_op(S, unit(p))):
                return False
    return True


def adjoint_solve(sys_: RSystem, T: dict):
    """A left-module map ``S`` on P with ``psi(p (x) T q) = psi(S p (x) q)``, or None."""
    if not is_right_hom(sys_, T):
        raise InputError("operator is not a right-module homomorphism of Q")
    P, Q, R = sys_.P, sys_.Q, sys_.ring
    k = P.dimension
    unknowns = [(i, j) for i in range(k) for j in range(k)]
    columns = []
    for i, j in unknowns:
        col: dict = {}
        # adjoint equations: coefficient of S[i, j] in psi(S e_j (x) e_c)
        for c in range(Q.dimension):
            for key, v in sys_.psi_apply(unit(i), unit(c)).items():
                vacc(col, {("adj", j, c, key): v})
        # left-linearity S(r.e_b) - r.S(e_b) = 0
        for r in range(R.dimension):
            for b in range(k):
                rb = P.act_left(unit(r), unit(b)).get(j)
                if rb:
                    vacc(col, {("lin", r, b, i): rb})
                if b == j:
                    for key, v in P.act_left(unit(r), unit(i)).items():
                        vacc(col, {("lin", r, b, key): -v})
        columns.append(col)
    rhs: dict = {}
    for b in range(k):
        for c in range(Q.dimension):
            for key, v in sys_.psi_apply(unit(b), apply_op(T, unit(c))).items():
                vacc(rhs, {("adj", b, c, key): v})
    sol = solve_in_span(columns, rhs)
    if sol is None:
        return None
    return {unknowns[n]: c for n, c in sol.items() if c}


class FsWitness(NamedTuple):
    theta_coeffs: dict
    theta: dict
    phi_coeffs: dict
    phi: dict


def _fixing(span_: OperatorSpan, vectors: Sequence[dict]):
    """Coefficients of an operator in ``span_`` fixing every vector, or None."""
    cols = []
    for _, M in span_.generators:
        col: dict = {}
        for i, v in enumerate(vectors):
            for key, c in apply_op(M, v).items():
                col[(i, key)] = c
        cols.append(col)
    rhs = {(i, key): c for i, v in enumerate(vectors) for key, c in v.items()}
    return solve_in_span(cols, rhs)


def condition_fs(sys_: RSystem, qs: Sequence[dict], ps: Sequence[dict]) -> FsWitness | None:
    """Operators in F_P(Q) and F_Q(P) fixing the given finite sets, or None."""
    fq, fp = operator_spans(sys_)
    tc = _fixing(fq, list(qs))
    if tc is None:
        return None
    pc = _fixing(fp, list(ps))
    if pc is None:
        return None
    return FsWitness(tc, fq.combine(tc), pc, fp.combine(pc))


def generating_set(M: FdBimodule, R: FdAlgebra, side: str) -> list:
    """Greedy minimal one-sided generating set of basis vectors."""
    gens: list = []
    sub = Echelon()
    for m in range(M.dimension):
        if unit(m) in sub:
            continue
        gens.append(unit(m))
        sub.add(unit(m))
        for r in range(R.dimension):
            v = M.act_right(unit(m), unit(r)) if side == "right" else M.act_left(unit(r), unit(m))
            if v:
                sub.add(v)
    return gens


@dataclass
class FsPrimeReport:
    holds: bool
    unital: bool
    identity_route: bool
    generators_route: bool
    q_identity: dict | None = None  # coefficients over F_P(Q) generators
    p_identity: dict | None = None


def condition_fs_prime(sys_: RSystem) -> FsPrimeReport:
    """Decide (FS') by identity membership and by (FS) on generating sets.

    The two routes are independent computations of the same property and
    must agree.
    """
    fq, fp = operator_spans(sys_)
    idq = fq.express(identity_op(sys_.Q.dimension))
    idp = fp.express(identity_op(sys_.P.dimension))
    route_b = idq is not None and idp is not None
    qs = generating_set(sys_.Q, sys_.ring, "right")
    ps = generating_set(sys_.P, sys_.ring, "left")
    w = condition_fs(sys_, qs, ps)
    route_c = w is not None
    if route_c and (w.theta != identity_op(sys_.Q.dimension) or w.phi != identity_op(sys_.P.dimension)):
        # module maps fixing a generating set are the identity
        raise AssertionError("(FS) witness on generators is not the identity")
    if route_b != route_c:
        raise AssertionError(f"(FS') routes disagree: identity={route_b} generators={route_c}")
    return FsPrimeReport(route_b, is_unital(sys_), route_b, route_c, idq, idp)


@dataclass
class DeltaGamma:
    delta: list  # ring basis index -> operator on Q
    gamma: list  # ring basis index -> operator on P
    ker_delta: list  # dense ring vectors

    def delta_of(self, r: dict) -> dict:
        out: dict = {}
        for i, c in r.items():
            vacc(out, self.delta[i], c)
        return out

    def gamma_of(self, r: dict) -> dict:
        out: dict = {}
        for i, c in r.items():
            vacc(out, self.gamma[i], c)
        return out


def delta_gamma(sys_: RSystem) -> DeltaGamma:
    """``Delta(r) = left multiplication on Q``, ``Gamma(r) = right multiplication on P``."""
    R, P, Q = sys_.ring, sys_.P, sys_.Q
    delta = [op_from_columns([Q.act_left(unit(r), unit(j)) for j in range(Q.dimension)]) for r in range(R.dimension)]
    gamma = [op_from_columns([P.act_right(unit(j), unit(r)) for j in range(P.dimension)]) for r in range(R.dimension)]
    ker = nullspace(delta)
    return DeltaGamma(delta, gamma, [sparse_to_dense(v, R.dimension) for v in span(ker).basis()])


@dataclass
class IdealReport:
    psi_compatible: bool
    faithful: bool
    witnesses: list  # per J basis vector: coefficients of Delta(x) over F_P(Q) or None


def ideal_checks(sys_: RSystem, J: Sequence[Sequence]) -> IdealReport:
    """psi-compatibility (Delta(J) inside F_P(Q)) and faithfulness (ker Delta meets J trivially)."""
    bad = closure_violation(sys_.ring, J)
    if bad is not None:
        raise InputError(f"J is not an ideal: {bad}")
    dg = delta_gamma(sys_)
    fq, _ = operator_spans(sys_)
    wits = [fq.express(dg.delta_of(dense_to_sparse(x))) for x in J]
    ker = span(dense_to_sparse(x) for x in dg.ker_delta)
    meet = intersect(ker, span(dense_to_sparse(x) for x in J))
    return IdealReport(all(w is not None for w in wits), meet.dim == 0, wits)


def psi_image(sys_: RSystem) -> Echelon:
    return span(sys_.psi_apply(unit(p), unit(q)) for p in range(sys_.P.dimension) for q in range(sys_.Q.dimension))


def render_ring(sys_: RSystem, v: dict) -> str:
    if not v:
        return "0"
    parts = []
    for i in sorted(v):
        c = v[i]
        lab = sys_.ring_label(i)
        parts.append(lab if c == 1 else f"{format_rational(c)}*{lab}")
    return " + ".join(parts)


def strong_sufficiency(sys_: RSystem, J: Sequence[Sequence]) -> GradedVerdict:
    """Sufficient test for a strongly graded relative Cuntz-Pimsner ring.

    Needs a unital system with (FS'); then ``1 in J`` and a surjective
    ``psi`` certify strong grading.  Failing hypotheses give inconclusive,
    since the criterion is not necessary.
    """
    if not is_unital(sys_):
        raise InputError("strong_sufficiency needs a unital system")
    fs = condition_fs_prime(sys_)
    if not fs.holds:
        raise InputError("strong_sufficiency needs Condition (FS')")
    u = sys_.unit
    one_in_j = u in span(dense_to_sparse(x) for x in J)
    surj = psi_image(sys_).dim == sys_.ring.dimension
    if one_in_j and surj:
        wit = surjectivity_witnesses(sys_, 1)
        text = "1 in J; psi onto: 1 = " + " + ".join(
            f"psi({_render_mod(sys_.P, p)} x {_render_mod(sys_.Q, q)})" for p, q in wit
        )
        return GradedVerdict(
            "strongly",
            CERTIFIED_YES,
            text,
            note="1 in J and psi surjective",
            data=wit,
            verify=lambda: _psi_sum(sys_, wit) == u,
        )
    reasons = []
    if not one_in_j:
        reasons.append("1 not in J")
    if not surj:
        reasons.append(f"psi image {render_basis(sys_, psi_image(sys_))} != R")
    return GradedVerdict("strongly", INCONCLUSIVE, note="hypotheses_not_met: " + "; ".join(reasons))


def render_basis(sys_: RSystem, e: Echelon) -> str:
    return "span{" + ", ".join(render_ring(sys_, v) for v in e.basis()) + "}"


def _render_mod(M: FdBimodule, v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(M.label(i) if c == 1 else f"{format_rational(c)}*{M.label(i)}" for i, c in sorted(v.items()))


def _psi_sum(sys_: RSystem, pairs) -> dict:
    out: dict = {}
    for p, q in pairs:
        vacc(out, sys_.psi_apply(p, q))
    return out


def surjectivity_witnesses(sys_: RSystem, n: int, cap: int = DEFAULT_CAP):
    """Pairs ``(p, q)`` over the n-th tensor power with ``sum psi_n(p (x) q) = 1``.

    Built inductively from a decomposition ``1 = sum psi(p_i (x) q_i)``: the
    pairs ``(p_i (x) p'_j, q'_j (x) q_i)`` work for ``psi_n`` whenever the
    ``(p'_j, q'_j)`` work for ``psi_(n-1)``.  Returns None if psi is not onto.
    """
    u = sys_.unit
    if u is None:
        raise InputError("surjectivity_witnesses needs a unital system")
    if n == 0:
        return [(dict(u), dict(u))]
    P, Q = sys_.P, sys_.Q
    pairs = [(p, q) for p in range(P.dimension) for q in range(Q.dimension)]
    coeffs = solve_in_span([sys_.psi_apply(unit(p), unit(q)) for p, q in pairs], u)
    if coeffs is None:
        return None
    base = [({pairs[k][0]: c}, unit(pairs[k][1])) for k, c in sorted(coeffs.items())]
    if n == 1:
        out = base
    else:
        prev = surjectivity_witnesses(sys_, n - 1, cap)
        big = tensor_power(sys_, n, cap)
        PT, QT = big.tensor
        out = []
        for p, q in base:
            for pp, qq in prev:
                out.append((PT.pure(p, pp), QT.pure(qq, q)))
    big = tensor_power(sys_, n, cap)
    if _psi_sum(big, out) != u:
        raise AssertionError("surjectivity witness failed to verify")
    return out


# ---------------------------------------------------------------------------
# covariant representations


class FdElement:
    """Element of a graded finite-dimensional target algebra."""

    __slots__ = ("target", "vec")

    def __init__(self, target: "FdTarget", vec: dict):
        self.target = target
        self.vec = {k: Fraction(c) for k, c in vec.items() if c}

    def __add__(self, o):
        return FdElement(self.target, vacc(dict(self.vec), o.vec))

    def __sub__(self, o):
        return FdElement(self.target, vacc(dict(self.vec), o.vec, -1))

    def __neg__(self):
        return FdElement(self.target, {k: -c for k, c in self.vec.items()})

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return FdElement(self.target, {k: c * o for k, c in self.vec.items()})
        return FdElement(self.target, self.target.alg.mul_sparse(self.vec, o.vec))

    def __rmul__(self, o):
        return self * o

    def __eq__(self, o):
        return isinstance(o, FdElement) and self.vec == o.vec

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def is_zero(self) -> bool:
        return not self.vec

    def __repr__(self):
        return self.target.render(self)


class FdTarget:
    """A finite-dimensional algebra with a degree tag on each basis element."""

    def __init__(self, alg: FdAlgebra, degrees: Sequence[int]):
        if len(degrees) != alg.dimension:
            raise InputError("one degree per basis element required")
        self.alg = alg
        self.degrees = list(degrees)

    def element(self, vec) -> FdElement:
        return FdElement(self, _clean(vec))

    def zero(self):
        return FdElement(self, {})

    def one(self):
        return None if self.alg.unit is None else FdElement(self, dense_to_sparse(self.alg.unit))

    def degree(self, x: FdElement):
        ds = {self.degrees[k] for k in x.vec}
        return ds.pop() if len(ds) == 1 else None

    def coords(self, x: FdElement) -> dict:
        return dict(x.vec)

    def render(self, x: FdElement) -> str:
        if not x.vec:
            return "0"
        labs = self.alg.labels
        return " + ".join(
            f"{format_rational(c)}*{labs[k] if labs else 'b' + str(k + 1)}" for k, c in sorted(x.vec.items())
        )

    def surjectivity_targets(self, bound: int):
        return [self.element(unit(i)) for i in range(self.alg.dimension)]


@dataclass
class CovariantRep:
    """Images of ring, P and Q basis vectors in a target ring."""

    target: Any
    sigma: list
    S: list
    T: list

    def _lin(self, images: list, v: dict):
        out = self.target.zero()
        for i, c in v.items():
            out = out + images[i] * c
        return out

    def sigma_of(self, r: dict):
        return self._lin(self.sigma, r)

    def S_of(self, p: dict):
        return self._lin(self.S, p)

    def T_of(self, q: dict):
        return self._lin(self.T, q)


def rep_power(sys_: RSystem, rep: CovariantRep, n: int) -> CovariantRep:
    """Induced representation of the n-th tensor power system.

    ``S_n(p1 (x) x) = S(p1) S_(n-1)(x)`` and ``T_n(y (x) q1) = T_(n-1)(y) T(q1)``.
    """
    if n == 1:
        return rep
    big = tensor_power(sys_, n)
    if n == 0:
        return CovariantRep(rep.target, rep.sigma, rep.sigma, rep.sigma)
    prev = rep_power(sys_, rep, n - 1)
    PT, QT = big.tensor
    S = [rep.S[p1] * prev.S[x] for p1, x in PT.pairs]
    T = [prev.T[y] * rep.T[q1] for y, q1 in QT.pairs]
    return CovariantRep(rep.target, rep.sigma, S, T)


@dataclass
class RepReport:
    axioms: list  # failure descriptions; empty means every axiom holds
    graded: bool
    injective: bool
    surjective_up_to_bound: bool | None
    bound: int
    faithful: bool | None
    invariant_rel_J: bool | None

    @property
    def axioms_ok(self) -> bool:
        return not self.axioms


def _coords(target, x) -> dict:
    return target.coords(x)


def validate_covariant_rep(sys_: RSystem, rep: CovariantRep, J: Sequence[Sequence] | None = None, bound: int = 4) -> RepReport:
    """Check the covariant-representation axioms on basis elements plus the optional flags."""
    R, P, Q = sys_.ring, sys_.P, sys_.Q
    if len(rep.sigma) != R.dimension or len(rep.S) != P.dimension or len(rep.T) != Q.dimension:
        raise InputError("representation maps do not match the system dimensions")
    fails = []
    for a in range(R.dimension):
        for b in range(R.dimension):
            if rep.sigma_of(R.basis_product(a, b)) != rep.sigma[a] * rep.sigma[b]:
                fails.append(f"sigma not multiplicative on ({a}, {b})")
        for p in range(P.dimension):
            if rep.S_of(P.act_right(unit(p), unit(a))) != rep.S[p] * rep.sigma[a]:
                fails.append(f"S(p r) on (p{p}, r{a})")
            if rep.S_of(P.act_left(unit(a), unit(p))) != rep.sigma[a] * rep.S[p]:
                fails.append(f"S(r p) on (r{a}, p{p})")
        for q in range(Q.dimension):
            if rep.T_of(Q.act_right(unit(q), unit(a))) != rep.T[q] * rep.sigma[a]:
                fails.append(f"T(q r) on (q{q}, r{a})")
            if rep.T_of(Q.act_left(unit(a), unit(q))) != rep.sigma[a] * rep.T[q]:
                fails.append(f"T(r q) on (r{a}, q{q})")
    for p in range(P.dimension):
        for q in range(Q.dimension):
            if rep.sigma_of(sys_.psi_apply(unit(p), unit(q))) != rep.S[p] * rep.T[q]:
                fails.append(f"sigma(psi(p x q)) != S(p)T(q) on ({p}, {q})")
    tgt = rep.target

    def deg_ok(xs, d):
        return all(x.is_zero() or tgt.degree(x) == d for x in xs)

    graded = deg_ok(rep.sigma, 0) and deg_ok(rep.T, 1) and deg_ok(rep.S, -1)
    inj = span(_coords(tgt, x) for x in rep.sigma).dim == R.dimension
    surj = _surjective(rep, bound)
    faithful = invariant = None
    fs = condition_fs_prime(sys_)
    pc = None
    if fs.holds:
        pc = pi_chi(sys_, rep)
        if sys_.unit is not None:
            faithful = pc.pi(identity_op(Q.dimension)) == rep.sigma_of(sys_.unit)
    if J is not None:
        dg = delta_gamma(sys_)
        pc = pc or pi_chi(sys_, rep)
        invariant = True
        for x in J:
            xs = dense_to_sparse(x)
            img = pc.pi(dg.delta_of(xs))
            if img is None or img != rep.sigma_of(xs):
                invariant = False
    return RepReport(fails, graded, inj, surj, bound, faithful, invariant)


def _surjective(rep: CovariantRep, bound: int):
    tgt = rep.target
    goals = tgt.surjectivity_targets(bound)
    if goals is None:
        return None
    gens = [x for x in rep.sigma + rep.S + rep.T if not x.is_zero()]
    e = Echelon()
    layer = []
    for g in gens:
        if e.add(_coords(tgt, g)):
            layer.append(g)
    words = list(layer)
    for _ in range(bound - 1):
        nxt = []
        for w in words:
            for g in gens:
                x = w * g
                if not x.is_zero() and e.add(_coords(tgt, x)):
                    nxt.append(x)
        if not nxt:
            break
        words = words + nxt
    return all(_coords(tgt, x) in e for x in goals)


class PiChi:
    """``pi`` on F_P(Q) and ``chi`` on F_Q(P) for a covariant representation.

    ``chi`` lands in the opposite ring, so as a map into the target it is an
    anti-homomorphism: ``chi(Phi Phi') = chi(Phi') chi(Phi)``.  The relation
    ``chi(Phi) * S(p) = S(Phi(p))`` therefore reads ``S(p) chi(Phi) = S(Phi(p))``
    in the target, which is the form checked here.
    """

    def __init__(self, sys_: RSystem, rep: CovariantRep):
        self.sys = sys_
        self.rep = rep
        self.fq, self.fp = operator_spans(sys_)
        self.pi_gens = [rep.T[q] * rep.S[p] for (q, p), _ in self.fq.generators]
        self.chi_gens = [rep.T[q] * rep.S[p] for (p, q), _ in self.fp.generators]
        self.failures: list = []
        for rel in self.fq.relations():
            if not self._lin(self.pi_gens, rel).is_zero():
                self.failures.append(f"pi not well defined on relation {rel}")
        for rel in self.fp.relations():
            if not self._lin(self.chi_gens, rel).is_zero():
                self.failures.append(f"chi not well defined on relation {rel}")

    @property
    def well_defined(self) -> bool:
        return not self.failures

    def _lin(self, images, coeffs):
        out = self.rep.target.zero()
        for k, c in coeffs.items():
            out = out + images[k] * c
        return out

    def pi(self, M: dict):
        c = self.fq.express(M)
        return None if c is None else self._lin(self.pi_gens, c)

    def chi(self, M: dict):
        c = self.fp.express(M)
        return None if c is None else self._lin(self.chi_gens, c)

    def relation_failures(self) -> list:
        """Every relation family checked on generator and basis elements."""
        sys_, rep = self.sys, self.rep
        dg = delta_gamma(sys_)
        R, P, Q = sys_.ring, sys_.P, sys_.Q
        bad = list(self.failures)
        thetas = [M for _, M in self.fq.generators]
        phis = [M for _, M in self.fp.generators]
        for k, Th in enumerate(thetas):
            pt = self.pi_gens[k]
            for r in range(R.dimension):
                s = rep.sigma[r]
                if self.pi(compose(dg.delta[r], Th)) != s * pt:
                    bad.append(f"pi(Delta(r)Theta) at r{r}, gen {k}")
                if self.pi(compose(Th, dg.delta[r])) != pt * s:
                    bad.append(f"pi(Theta Delta(r)) at r{r}, gen {k}")
            for q in range(Q.dimension):
                if pt * rep.T[q] != rep.T_of(apply_op(Th, unit(q))):
                    bad.append(f"pi(Theta)T(q) at q{q}, gen {k}")
            for k2, Th2 in enumerate(thetas):
                if self.pi(compose(Th, Th2)) != pt * self.pi_gens[k2]:
                    bad.append(f"pi not multiplicative on gens {k}, {k2}")
        for k, Ph in enumerate(phis):
            ch = self.chi_gens[k]
            for r in range(R.dimension):
                s = rep.sigma[r]
                if self.chi(compose(dg.gamma[r], Ph)) != ch * s:
                    bad.append(f"chi(Gamma(r)Phi) at r{r}, gen {k}")
                if self.chi(compose(Ph, dg.gamma[r])) != s * ch:
                    bad.append(f"chi(Phi Gamma(r)) at r{r}, gen {k}")
            for p in range(P.dimension):
                if rep.S[p] * ch != rep.S_of(apply_op(Ph, unit(p))):
                    bad.append(f"S(p)chi(Phi) at p{p}, gen {k}")
            for k2, Ph2 in enumerate(phis):
                if self.chi(compose(Ph, Ph2)) != self.chi_gens[k2] * ch:
                    bad.append(f"chi not anti-multiplicative on gens {k}, {k2}")
        return bad


def pi_chi(sys_: RSystem, rep: CovariantRep) -> PiChi:
    return PiChi(sys_, rep)


def unit_witness(sys_: RSystem, rep: CovariantRep, n: int):
    """Iterated decomposition ``1 = sum T(q_1)..T(q_n) S(p_n)..S(p_1)``.

    Uses ``id_Q = sum c theta_{q,p}`` from (FS') n times.  Returns the list of
    ``(coeff, T-word, S-word)`` terms; each T-word has degree n and each
    S-word degree -n.  Only meaningful for faithful representations.
    """
    fs = condition_fs_prime(sys_)
    if not fs.holds:
        raise InputError("unit_witness needs Condition (FS')")
    fq, _ = operator_spans(sys_)
    base = [(c, fq.generators[k][0]) for k, c in sorted(fs.q_identity.items())]
    terms = [(ONE, [], [])]
    for _ in range(n):
        terms = [(c0 * c, tw + [q], [p] + sw) for c0, tw, sw in terms for c, (q, p) in base]
    out = []
    for c, tw, sw in terms:
        tword = rep.T[tw[0]]
        for q in tw[1:]:
            tword = tword * rep.T[q]
        sword = rep.S[sw[0]]
        for p in sw[1:]:
            sword = sword * rep.S[p]
        out.append((c, tword, sword))
    return out


# ---------------------------------------------------------------------------
# file format


def parse_rsystem(text: str) -> RSystem:
    """Parse the line-oriented R-system format (1-based indices)."""
    dims: dict = {}
    unit_vec = None
    table: dict = {}
    acts = {"Qleft": {}, "Qright": {}, "Pleft": {}, "Pright": {}}
    psi: dict = {}

    def coords(lineno, toks, n):
        if len(toks) != n:
            raise ParseError(lineno, f"expected {n} coordinates, got {len(toks)}")
        try:
            return {k: v for k, v in ((k, parse_rational(t)) for k, t in enumerate(toks)) if v}
        except InputError as exc:
            raise ParseError(lineno, str(exc)) from None

    def index(lineno, tok, n, what):
        try:
            i = int(tok)
        except ValueError:
            raise ParseError(lineno, f"bad {what} index {tok!r}") from None
        if not 1 <= i <= n:
            raise ParseError(lineno, f"{what} index {i} out of range 1..{n}")
        return i - 1

    def count(lineno, tok):
        if not tok.isdigit():
            raise ParseError(lineno, f"bad dimension {tok!r}")
        return int(tok)

    def need(lineno, key):
        if key not in dims:
            raise ParseError(lineno, f"{key} dimension must be declared first")
        return dims[key]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        parts = head.split()
        vals = tail.split()
        kind = parts[0]
        if kind == "ring" and len(parts) == 3 and parts[1] == "dim":
            dims["ring"] = count(lineno, parts[2])
        elif kind == "ring" and len(parts) >= 2 and parts[1] == "unit":
            n = need(lineno, "ring")
            if parts[2:] == ["none"]:
                unit_vec = None
            else:
                unit_vec = sparse_to_dense(coords(lineno, parts[2:], n), n)
        elif kind == "mul":
            n = need(lineno, "ring")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'mul <i> <j> : <coords>'")
            i, j = index(lineno, parts[1], n, "ring"), index(lineno, parts[2], n, "ring")
            table[(i, j)] = coords(lineno, vals, n)
        elif kind == "mod" and len(parts) == 4 and parts[1] in ("P", "Q") and parts[2] == "dim":
            dims[parts[1]] = count(lineno, parts[3])
        elif kind in acts:
            mod = kind[0]
            n, m = need(lineno, "ring"), need(lineno, mod)
            if len(parts) != 3:
                raise ParseError(lineno, f"expected '{kind} <a> <b> : <coords>'")
            if kind.endswith("left"):
                key = (index(lineno, parts[1], n, "ring"), index(lineno, parts[2], m, mod))
            else:
                key = (index(lineno, parts[1], m, mod), index(lineno, parts[2], n, "ring"))
            acts[kind][key] = coords(lineno, vals, m)
        elif kind == "psi":
            n, kp, mq = need(lineno, "ring"), need(lineno, "P"), need(lineno, "Q")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'psi <p> <q> : <coords>'")
            psi[(index(lineno, parts[1], kp, "P"), index(lineno, parts[2], mq, "Q"))] = coords(lineno, vals, n)
        else:
            raise ParseError(lineno, f"unrecognised line {line!r}")
    if "ring" not in dims:
        raise ParseError(0, "missing 'ring dim'")
    ring = FdAlgebra(dims["ring"], table, unit_vec)
    P = FdBimodule(dims.get("P", 0), acts["Pleft"], acts["Pright"])
    Q = FdBimodule(dims.get("Q", 0), acts["Qleft"], acts["Qright"])
    return RSystem(ring, P, Q, psi)


def serialize_rsystem(sys_: RSystem) -> str:
    R = sys_.ring
    n = R.dimension

    def fmt(v: dict, m: int) -> str:
        return " ".join(format_rational(c) for c in sparse_to_dense(v, m))

    lines = [f"ring dim {n}"]
    lines.append("ring unit none" if R.unit is None else "ring unit " + " ".join(format_rational(c) for c in R.unit))
    for (i, j), v in sorted(R.table.items()):
        lines.append(f"mul {i + 1} {j + 1} : {fmt(v, n)}")
    for name, M in (("Q", sys_.Q), ("P", sys_.P)):
        lines.append(f"mod {name} dim {M.dimension}")
        for (r, m), v in sorted(M.left.items()):
            lines.append(f"{name}left {r + 1} {m + 1} : {fmt(v, M.dimension)}")
        for (m, r), v in sorted(M.right.items()):
            lines.append(f"{name}right {m + 1} {r + 1} : {fmt(v, M.dimension)}")
    for (p, q), v in sorted(sys_.psi.items()):
        lines.append(f"psi {p + 1} {q + 1} : {fmt(v, n)}")
    return "\n".join(lines) + "\n"
