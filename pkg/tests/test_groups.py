import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from paperlab.arith import MatrixFp
from paperlab.groups import (
    GroupError,
    GroupSizeError,
    act,
    bireflections,
    closure,
    elementary_abelian_quotient,
    generated_by_bireflections,
    has_nontrivial_character,
    is_abelian,
    is_bireflection,
    lagrange_holds,
)
from paperlab.polyring import PolynomialRing
from paperlab.scenario import block_matrix, build_example_general, build_example_main, variable_names


def trivial(n=6, p=2):
    return closure([], p=p, n=n)


def test_closure_examples():
    assert build_example_main(2).G.order() == 8
    assert trivial().order() == 1
    assert closure([MatrixFp.identity(6, 3)]).order() == 1
    assert build_example_main(3).H.order() == 3


def test_closure_matches_oracle():
    for p in (2, 3):
        sc = build_example_main(p)
        gens = [tuple(map(tuple, g.to_lists())) for g in sc.G.generators]
        assert len(oracles.group_closure(gens, p)) == sc.G.order() == p ** 3


def test_closure_rejects_singular_and_caps_size():
    with pytest.raises(GroupError):
        closure([MatrixFp([[1, 1], [1, 1]], 2)])
    with pytest.raises(GroupSizeError):
        closure(build_example_main(3).G.generators, cap=10)


def test_act_examples():
    p = 5
    T = PolynomialRing(p, variable_names(3))
    h = block_matrix(p, [1, 1, 1])
    assert act(h, T.parse("x2")) == T.parse("x2 + y2")
    assert act(h, T.const(4)) == T.const(4)
    T2 = PolynomialRing(2, variable_names(3))
    f = T2.parse("x1*y2 + x2*y1")
    assert act(block_matrix(2, [1, 1, 1]), f) == f


def test_bireflection_examples():
    assert is_bireflection(MatrixFp.identity(6, 2))
    assert is_bireflection(block_matrix(2, [1, 0, 0]))
    assert not is_bireflection(block_matrix(2, [1, 1, 1]))
    sc = build_example_main(3)
    assert generated_by_bireflections(sc.G)
    assert not generated_by_bireflections(sc.H)
    assert generated_by_bireflections(trivial())
    assert len(bireflections(sc.H)) == 1


def heisenberg():
    e12 = MatrixFp([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 2)
    e23 = MatrixFp([[1, 0, 0], [0, 1, 1], [0, 0, 1]], 2)
    return closure([e12, e23])


def test_abelian_examples():
    assert is_abelian(build_example_main(2).G)
    assert is_abelian(trivial())
    assert not is_abelian(heisenberg())
    assert heisenberg().order() == 8


def test_quotient_examples():
    for p in (2, 3):
        sc = build_example_main(p)
        assert elementary_abelian_quotient(sc.G, sc.H).invariant_factors == (p, p)
        assert elementary_abelian_quotient(sc.G, sc.G).invariant_factors == ()
        triv = closure([], p=p, n=6)
        q = elementary_abelian_quotient(sc.G, triv)
        assert q.invariant_factors == (p, p, p) and q.order == p ** 3
    sc = build_example_general(2, 4)
    assert elementary_abelian_quotient(sc.G, sc.H).invariant_factors == (2, 2, 2)


def test_quotient_errors():
    with pytest.raises(GroupError):
        elementary_abelian_quotient(heisenberg(), closure([], p=2, n=3))
    g = MatrixFp([[1, 1], [0, 1]], 3)
    other = MatrixFp([[1, 0], [1, 1]], 3)
    with pytest.raises(GroupError):
        elementary_abelian_quotient(closure([g]), closure([other]))
    z4 = closure([MatrixFp([[0, 4], [1, 0]], 5)])  # order 4, not elementary
    with pytest.raises(GroupError):
        elementary_abelian_quotient(z4, closure([], p=5, n=2))


def test_character_examples():
    for p in (2, 3, 5):
        assert not has_nontrivial_character(build_example_main(p).H)
    assert not has_nontrivial_character(trivial())
    assert has_nontrivial_character(closure([MatrixFp([[4, 0], [0, 1]], 5)]))
    with pytest.raises(GroupError):
        has_nontrivial_character(heisenberg())


def test_subgroup_and_lagrange():
    sc = build_example_main(3)
    assert sc.H.is_subgroup_of(sc.G)
    assert lagrange_holds(sc.G, sc.H)
    assert build_example_general(3, 3).G.same_elements(sc.G)


# -- properties ------------------------------------------------------------

def small_groups():
    """Random subsets of unipotent block generators for p in {2, 3}, d <= 3."""
    def build(args):
        p, picks = args
        gens = [block_matrix(p, list(e)) for e in picks]
        return closure(gens, p=p, n=6)
    return st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(
        st.just(p), st.lists(st.tuples(*[st.integers(0, p - 1)] * 3), min_size=1, max_size=3)
    )).map(build)


def polys(ring):
    mono = st.tuples(*[st.integers(0, 2)] * ring.nvars)
    return st.dictionaries(mono, st.integers(1, ring.p - 1), max_size=4).map(ring.from_dict)


@settings(max_examples=30, deadline=None)
@given(small_groups(), st.data())
def test_action_law(G, data):
    T = PolynomialRing(G.p, variable_names(3))
    f = data.draw(polys(T))
    M = data.draw(st.sampled_from(G.elements))
    N = data.draw(st.sampled_from(G.elements))
    assert act(M, act(N, f)) == act(N @ M, f)


@settings(max_examples=30, deadline=None)
@given(small_groups(), st.data())
def test_invariance_transfers_to_closure(G, data):
    assert G.order() <= 27
    T = PolynomialRing(G.p, variable_names(3))
    # symmetrize a random f over the group so invariants actually occur
    f = data.draw(polys(T))
    inv = T.zero()
    for g in G.elements:
        inv = inv + act(g, f)
    for cand in (f, inv):
        if all(act(g, cand) == cand for g in G.generators):
            assert all(act(h, cand) == cand for h in G.elements)
    assert all(act(h, inv) == inv for h in G.elements)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n,
                       max_size=n).map(lambda r: MatrixFp(r, p)))))
def test_bireflection_rank_kernel_equivalence(M):
    D = M - MatrixFp.identity(M.rows, M.p)
    assert is_bireflection(M) == (len(D.kernel_basis()) >= M.rows - 2)


@settings(max_examples=30, deadline=None)
@given(small_groups(), st.data())
def test_lagrange(G, data):
    picks = data.draw(st.lists(st.sampled_from(G.elements), max_size=2))
    K = closure(picks, p=G.p, n=G.n)
    assert K.is_subgroup_of(G)
    assert lagrange_holds(G, K)
    assert all(h in G for h in K.elements)
