import dataclasses
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedcp.cslp import (
    CslpElement,
    Mat,
    classify_cslp,
    full_idempotent_certificate,
    handle_violation,
    lift_certificate,
    lpa_corner_handle,
    make_handle,
    matrix_handle,
    oracle_agreement,
    oracle_reduce,
    parse_cslp,
    random_word,
    relations_check,
    word_value,
)
from gradedcp.exactalg import InputError, ParseError
from gradedcp.graph import parse_graph, rose
from gradedcp.verdict import CERTIFIED_NO, CERTIFIED_YES, INCONCLUSIVE

DATA = Path(__file__).resolve().parent.parent / "data"
SWAP = [[0, 1], [1, 0]]


@pytest.fixture(scope="module")
def swap():
    return matrix_handle(2, SWAP)


@pytest.fixture(scope="module")
def corner():
    return lpa_corner_handle(rose(2), "g1")


def test_mat_basics():
    a = Mat([[1, 2], [3, 4]])
    assert a * a.inverse() == Mat.identity(2)
    assert Mat([[1, 1], [1, 1]]).inverse() is None
    assert (a - a).is_zero() and not a.is_zero()
    assert a * 2 == a + a
    assert hash(Mat([[1, 0], [0, 1]])) == hash(Mat.identity(2))


def test_matrix_handle_rejects_bad_input():
    with pytest.raises(InputError):
        matrix_handle(2, [[1, 1], [1, 1]])
    with pytest.raises(InputError):
        matrix_handle(3, SWAP)


def test_zero_idempotent_rejected(swap):
    h = dataclasses.replace(swap, e=Mat.zeros(2))
    assert handle_violation(h) == "e = 0"
    h = dataclasses.replace(swap, e=Mat([[2, 0], [0, 0]]))
    assert handle_violation(h) == "e is not idempotent"


def test_defining_relations(swap, corner):
    for h in (swap, corner):
        assert h.t_minus() * h.t_plus() == h.const(h.one)
        assert h.t_plus() * h.t_minus() == h.const(h.e)
        assert relations_check(h).ok


def test_corner_t_plus_t_minus(corner):
    A = corner.algebra
    assert corner.t_plus() * corner.t_minus() == corner.const(A.parse("g1.g1*"))
    # the square is alpha(e), not e
    assert corner.t_plus(2) * corner.t_minus(2) == corner.const(A.parse("g1.g1.g1*.g1*"))
    assert corner.t_minus(3) * corner.t_plus(3) == corner.const(corner.one)


def test_element_arithmetic(corner):
    A = corner.algebra
    x = CslpElement.make(corner, {1: A.parse("g1"), -1: A.parse("g1"), 0: A.one()})
    assert x - x == CslpElement(corner, {})
    assert (x * 2) == x + x
    assert x.degrees() == {-1, 0, 1}
    # coefficients are cut to the canonical corner: t_- g2 = t_- e g2 = 0
    assert CslpElement.make(corner, {1: A.parse("g2")}).is_zero()
    assert CslpElement.make(corner, {2: A.parse("g2")}).is_zero()
    assert corner.t_minus() * corner.const(A.parse("g2")) == CslpElement(corner, {})


def test_planted_wrong_inverse():
    u = Mat([[1, 1], [0, 1]])
    h = matrix_handle(2, u, alpha_inv=lambda s: u * s * u.inverse(), validate=False)
    assert handle_violation(h) is not None
    rep = relations_check(h)
    assert not rep.ok and any("associativity" in f for f in rep.failures)


def test_oracle_agreement_500(swap, corner):
    assert oracle_agreement(swap, n_words=500) is None
    assert oracle_agreement(corner, n_words=500) is None


@given(st.integers(0, 10_000))
def test_oracle_seeds(seed):
    h = lpa_corner_handle(rose(2), "g1", validate=False)
    rng = random.Random(seed)
    w = random_word(h, rng, 5)
    assert oracle_reduce(h, w, rng) == word_value(h, w)


@given(st.integers(0, 10_000))
def test_associativity_random(seed):
    h = matrix_handle(2, [[2, 1], [1, 1]])
    rng = random.Random(seed)

    def el():
        return CslpElement.make(h, {rng.randint(-2, 2): h.random_element(rng) for _ in range(2)})

    x, y, z = el(), el(), el()
    assert (x * y) * z == x * (y * z)


def test_full_idempotent_certificate(corner):
    cert = full_idempotent_certificate(corner, 2)
    A = corner.algebra
    total = A.zero()
    for c, a, b in cert:
        total = total + a * corner.e * b * c
    assert total == A.one()
    for k in (1, 2, 3):
        mid = corner.alpha_pow(corner.e, k - 1)
        total = A.zero()
        for c, a, b in lift_certificate(corner, cert, k):
            total = total + a * mid * b * c
        assert total == A.one()
    with pytest.raises(InputError):
        full_idempotent_certificate(corner, 0)


def test_classify_corner(corner):
    v = classify_cslp(corner, 3, 3)
    assert v["strongly"].status == CERTIFIED_YES and v["strongly"].recheck()
    assert v["epsilon_strongly"].status == CERTIFIED_YES
    for k in (1, 2, 3):
        assert v[f"epsilon_unit[k={k}]"].status == CERTIFIED_YES
        # A_-k A_k is all of R here, so its unit is 1
        assert v[f"epsilon_unit[k={k}]"].witness == "v"
    assert v["artinian"].status == CERTIFIED_NO and v["artinian"].recheck()
    assert v["noetherian"].status == INCONCLUSIVE
    assert v["semi_saturated"].status == CERTIFIED_YES


def test_classify_swap(swap):
    v = classify_cslp(swap, 2, 2)
    assert v["strongly"].status == CERTIFIED_YES
    assert v["epsilon_strongly"].status == CERTIFIED_YES
    with pytest.raises(InputError):
        classify_cslp(swap, 0)


def test_make_handle(g_rose2):
    assert make_handle("matrix", n=2, conjugator=SWAP).kind == "matrix"
    assert make_handle("lpa-corner", graph=g_rose2, edge="g2").kind == "lpa_corner"
    with pytest.raises(InputError):
        make_handle("tensor")


def test_corner_needs_one_vertex(g_edge, g_rose2):
    with pytest.raises(InputError):
        lpa_corner_handle(g_edge, "f1")
    with pytest.raises(InputError):
        lpa_corner_handle(g_rose2, "g9")


def test_parse_descriptor_files():
    h = parse_cslp((DATA / "swap.cslp").read_text())
    assert h.kind == "matrix" and h.alpha(Mat.unit(2, 0, 0)) == Mat.unit(2, 1, 1)
    h = parse_cslp((DATA / "rose2_corner.cslp").read_text(), str(DATA))
    assert h.kind == "lpa_corner"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "cslp matrix dim x\nconjugator 1\n",
        "cslp matrix dim 2\nconjugator 1 0 0\n",
        "cslp matrix dim 2\n",
        "cslp matrix dim 1\nconjugator 1/0\n",
        "cslp lpa-corner graph nowhere.graph isometry g1\n",
        "cslp tensor\n",
    ],
)
def test_parse_descriptor_errors(text, tmp_path):
    with pytest.raises(ParseError):
        parse_cslp(text, str(tmp_path))


def test_singular_conjugator_descriptor():
    with pytest.raises(InputError):
        parse_cslp("cslp matrix dim 2\nconjugator 1 1 1 1\n")


def test_scaled_conjugator_same_alpha():
    a = matrix_handle(2, SWAP)
    b = matrix_handle(2, [[0, Fraction(3)], [Fraction(3), 0]])
    m = Mat([[1, 2], [3, 4]])
    assert a.alpha(m) == b.alpha(m)


def test_two_vertex_graph_descriptor(tmp_path):
    (tmp_path / "two.graph").write_text("vertex a\nvertex b\nedge f a b\n")
    with pytest.raises(InputError):
        parse_cslp("cslp lpa-corner graph two.graph isometry f\n", str(tmp_path))
    assert parse_graph((tmp_path / "two.graph").read_text()).vertices == ("a", "b")
