import itertools

import pytest
from hypothesis import given, settings

from koszulkit.algebra import (AlgebraError, count_paths, format_algebra, is_finite_dimensional,
                               is_radical_square_zero, koszul_dual, make_algebra, multiply_words,
                               opposite_algebra, parse_algebra)
from conftest import algebra_from_seed, seeds


def brute_words(A, n):
    """All relation-free arrow sequences of length n, by exhaustive enumeration."""
    arrows = A.arrows
    out = []
    for seq in itertools.product(arrows, repeat=n):
        if all(a.target == b.source for a, b in zip(seq, seq[1:])) and \
                all((a.name, b.name) not in A.relations for a, b in zip(seq, seq[1:])):
            out.append(seq)
    return out


def test_parse_sl2(sl2):
    assert sl2.vertices == ("1", "2")
    assert [a.name for a in sl2.arrows] == ["alpha", "beta"]
    assert sl2.relations == {("alpha", "beta")}


@pytest.mark.parametrize("text,msg", [
    ("vertex 1\nvertex 2\narrow alpha 1 2\nrelation alpha alpha\n", "line 4: relation not composable"),
    ("vertex 1\nvertex 1\n", "line 2: duplicate identifier"),
    ("vertex 1\narrow a 1 3\n", "line 2: unknown endpoint"),
    ("vertex 1\nloop a 1 1\n", "line 2: syntax error"),
    ("vertex 1\narrow a 1 1\nrelation a b\n", "line 3: unknown arrow"),
])
def test_parse_errors(text, msg):
    with pytest.raises(AlgebraError, match=msg):
        parse_algebra(text)


def test_comments_and_blank_lines():
    A = parse_algebra("# c\n\nvertex 1 # v\narrow l 1 1\n")
    assert A.relations == frozenset() and len(A.arrows) == 1


def test_format_roundtrip(corpus):
    for _, A in corpus:
        B = parse_algebra(format_algebra(A))
        assert B.vertices == A.vertices and B.arrows == A.arrows and B.relations == A.relations


def test_dual_sl2(sl2):
    D = koszul_dual(sl2)
    assert {(a.name, a.source, a.target) for a in D.arrows} == {("alpha_op", "2", "1"),
                                                               ("beta_op", "1", "2")}
    assert D.relations == {("alpha_op", "beta_op")}


def test_dual_loop_square_zero(loop_sq):
    D = koszul_dual(loop_sq)
    assert D.relations == frozenset() and not D.finite_dim


def test_dual_involution_a3(a3):
    DD = koszul_dual(koszul_dual(a3))
    rename = {"a_op_op": "a", "b_op_op": "b"}
    assert {(rename[a.name], a.source, a.target) for a in DD.arrows} == \
        {(a.name, a.source, a.target) for a in a3.arrows}
    assert {(rename[x], rename[y]) for x, y in DD.relations} == a3.relations


def test_multiply_words(sl2):
    b, a = sl2.word(("beta",)), sl2.word(("alpha",))
    ba = multiply_words(sl2, b, a)
    assert ba.arrows == ("beta", "alpha") and ba.source == "2" and ba.target == "2"
    assert multiply_words(sl2, a, b) is None
    e1 = sl2.word((), "1")
    assert multiply_words(sl2, e1, a) == a
    assert multiply_words(sl2, b, b) is None


def test_count_paths_examples(sl2):
    assert count_paths(sl2, "2", "2", 2) == 1
    assert count_paths(sl2, "1", "1", 2) == 0
    assert count_paths(sl2, "1", "1", 0) == 1 and count_paths(sl2, "1", "2", 0) == 0


def test_finite_dimensional_examples(sl2, free_loop):
    assert is_finite_dimensional(sl2) == (True, 2, 5)
    assert is_finite_dimensional(free_loop) == (False, None, None)
    A = make_algebra(["1", "2", "3"], [])
    assert is_finite_dimensional(A) == (True, 0, 3)


def test_radical_square_zero(sl2, loop_sq):
    assert is_radical_square_zero(loop_sq)
    assert not is_radical_square_zero(sl2)
    assert is_radical_square_zero(make_algebra(["1", "2"], [("a", "1", "2")]))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_count_paths_matches_enumeration(seed):
    A = algebra_from_seed(seed, finite=False, max_arrows=5)
    for n in range(5):
        total = sum(count_paths(A, x, y, n) for x in A.vertices for y in A.vertices)
        expected = len(brute_words(A, n)) if n else len(A.vertices)
        assert total == expected


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_finite_flag_matches_enumeration(seed):
    A = algebra_from_seed(seed, finite=False, max_arrows=5)
    # a path longer than the number of arrows must repeat an arrow, so some
    # allowed word of length #arrows + 1 exists iff the allowed graph has a cycle
    n = len(A.arrows) + 1
    assert A.finite_dim == (not brute_words(A, n))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_dual_is_involution(seed):
    A = algebra_from_seed(seed, finite=False)
    DD = koszul_dual(koszul_dual(A))
    strip = lambda n: n[:-len("_op_op")]
    assert {(strip(a.name), a.source, a.target) for a in DD.arrows} == \
        {(a.name, a.source, a.target) for a in A.arrows}
    assert {(strip(x), strip(y)) for x, y in DD.relations} == set(A.relations)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_dual_allowed_graph_is_complement(seed):
    A = algebra_from_seed(seed, finite=False)
    D = koszul_dual(A)
    for a in A.arrows:
        for b in A.arrows:
            if a.target != b.source:
                continue
            allowed_in_A = (a.name, b.name) not in A.relations
            # word a b dualizes to b_op a_op
            allowed_in_D = (b.name + "_op", a.name + "_op") not in D.relations
            assert allowed_in_A != allowed_in_D


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_multiplication_associative(seed):
    A = algebra_from_seed(seed, finite=False, max_arrows=6)
    words = [w for x in A.vertices for n in range(3) for w in A.words_from(x, n)][:25]
    for p, q, r in itertools.product(words, repeat=3):
        pq = multiply_words(A, p, q)
        qr = multiply_words(A, q, r)
        left = multiply_words(A, pq, r) if pq is not None else None
        right = multiply_words(A, p, qr) if qr is not None else None
        assert left == right


def test_opposite_algebra(sl2):
    O = opposite_algebra(sl2)
    assert {(a.name, a.source, a.target) for a in O.arrows} == {("alpha", "2", "1"),
                                                               ("beta", "1", "2")}
    assert O.relations == {("beta", "alpha")}
