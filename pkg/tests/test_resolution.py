import random

from hypothesis import given, settings

from koszulkit.algebra import is_radical_square_zero, koszul_dual, make_algebra
from koszulkit.corpus import random_module
from koszulkit.expressions import parse_module
from koszulkit.modules import (arrow_ideal, injective_module, projective_module, simple_module)
from koszulkit.resolution import (linear_part, linearity_defect, minimal_injective_coresolution,
                                  minimal_projective_resolution, syzygy_decomposition,
                                  syzygy_gradedness, top_generators)
from conftest import algebra_from_seed, seeds


def euler_dims(A, betti, key, free):
    """Alternating sum of the dims of the (co)free terms at block ``key``."""
    v, deg = key
    total = 0
    for (s, d, y), m in betti.entries.items():
        total += (-1) ** s * m * free(A, y, d).dim(v, deg)
    return total


def test_sl2_simple_betti(sl2):
    res = minimal_projective_resolution(simple_module(sl2, "1"), 6, 10)
    assert res.betti.rows(sl2.vertices) == [(0, "1", 0, 1), (1, "2", 1, 1), (2, "1", 2, 1)]
    assert res.betti.complete and res.betti.projective_dimension() == 2


def test_sl2_arrow_ideal_betti(sl2):
    res = minimal_projective_resolution(arrow_ideal(sl2, "alpha"), 6, 10)
    assert res.betti.rows(sl2.vertices) == [(0, "2", 1, 1), (1, "1", 2, 1)]


def test_projective_resolves_trivially(a3):
    res = minimal_projective_resolution(projective_module(a3, "1"), 4)
    assert res.betti.rows(a3.vertices) == [(0, "1", 0, 1)]
    assert res.betti.projective_dimension() == 0


def test_loop_square_zero_periodic(loop_sq):
    res = minimal_projective_resolution(simple_module(loop_sq, "1"), 5, 10)
    assert res.betti.totals() == [1] * 6 and not res.betti.complete


def test_syzygy_decomposition_sl2(sl2):
    res = minimal_projective_resolution(simple_module(sl2, "1"), 4)
    assert [str(s) for s in syzygy_decomposition(res, 1).summands] == ["L(alpha)<0>"]
    assert [str(s) for s in syzygy_decomposition(res, 2).summands] == ["L(beta)<1>"]


def test_syzygy_decomposition_presented(sl2):
    res = minimal_projective_resolution(parse_module(sl2, "coker(2; beta.alpha)"), 4)
    dec = syzygy_decomposition(res, 2, allow_projective=False)
    assert dec.ok and dec.pairs() == [("beta", 2)]


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_resolution_euler_characteristic(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    if A.max_word_length() is None:
        return
    _, M = random_module(rng, A, "coker")
    steps = 5
    res = minimal_projective_resolution(M, steps)
    # step s is generated in degrees >= s + d0, so later steps vanish below this degree
    top = None if res.betti.complete else steps + min(M.degrees())
    keys = set(M.basis)
    for (s, d, y) in res.betti.entries:
        keys |= set(projective_module(A, y, d).basis)
    for key in keys:
        if top is None or key[1] <= top:
            assert euler_dims(A, res.betti, key, projective_module) == M.dim(*key)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_resolution_is_minimal_complex(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    _, M = random_module(rng, A, "coker", 8)
    res = minimal_projective_resolution(M, 3, 8)
    X = res.complex
    assert X.check() is None and X.is_minimal()
    for d in X.diffs.values():
        for e in d.values():
            assert all(len(w) >= 1 for w in e)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_second_syzygy_splits(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    text, M = random_module(rng, A, "coker", 10)
    res = minimal_projective_resolution(M, 3, 10)
    if len(res.syzygies) >= 2:
        dec = syzygy_decomposition(res, 2, allow_projective=False)
        assert dec.ok, (text, dec.witness)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_syzygies_graded(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    _, M = random_module(rng, A, "coker", 10)
    ok, wit = syzygy_gradedness(minimal_projective_resolution(M, 3, 10))
    assert ok, wit


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_linearity_defect_at_most_one(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    text, M = random_module(rng, A, "coker", 10)
    rep = linearity_defect(M, 6, 10)
    assert rep.certified and rep.defect in (0, 1), (text, rep.defect)
    if is_radical_square_zero(A):
        assert rep.defect == 0


def test_linearity_defect_examples(sl2):
    assert linearity_defect(simple_module(sl2, "1"), 6).defect == 0
    assert linearity_defect(parse_module(sl2, "coker(2; beta.alpha)"), 6).defect == 1
    F2 = make_algebra(["1"], [("x", "1", "1"), ("y", "1", "1")], set())
    rep = linearity_defect(parse_module(F2, "coker(1; x.x)", 8), 5, 8)
    assert rep.defect == 1 and rep.certified


def test_linear_part_drops_long_entries(sl2):
    res = minimal_projective_resolution(parse_module(sl2, "coker(2; beta.alpha)"), 4)
    lin = linear_part(res.complex)
    assert all(len(w) == 1 for d in lin.diffs.values() for e in d.values() for w in e)
    assert lin.cohomology_dims(-1) == {("2", 2): 1}


def test_top_generators_simple(a3):
    gens = top_generators(projective_module(a3, "1"))
    assert [(v, d) for v, d, _ in gens] == [("1", 0)]


def test_coresolution_dual_simple(sl2):
    B = koszul_dual(sl2)
    co = minimal_injective_coresolution(simple_module(B, "1"), 5, 8)
    assert co.cobetti.rows(B.vertices) == [(0, "1", 0, 1), (1, "2", -1, 1)]
    assert co.cobetti.complete


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_coresolution_euler_characteristic(seed):
    rng = random.Random(seed)
    A = algebra_from_seed(seed, max_arrows=6)
    if A.max_word_length() is None:
        return
    _, M = random_module(rng, A, "ker")
    steps = 5
    co = minimal_injective_coresolution(M, steps)
    # step s is cogenerated in degrees <= d1 - s
    bottom = None if co.cobetti.complete else max(M.degrees()) - steps
    keys = set(M.basis)
    for (s, d, y) in co.cobetti.entries:
        keys |= set(injective_module(A, y, d).basis)
    for key in keys:
        if bottom is None or key[1] >= bottom:
            assert euler_dims(A, co.cobetti, key, injective_module) == M.dim(*key)
