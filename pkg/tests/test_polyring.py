import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from paperlab.arith import MatrixFp
from paperlab.polyring import (
    MonomialOrder,
    PolynomialRing,
    PolynomialSyntaxError,
    RingMismatchError,
    count_monomials,
    monomials_of_degree,
    substitute_linear,
)
from paperlab.scenario import block_matrix, variable_names

T2 = PolynomialRing(2, variable_names(3))
T3 = PolynomialRing(3, variable_names(3))


def test_parse_examples():
    f = T2.parse("x1^2 + x1*y1")
    assert len(f.coeffs) == 2
    assert f == T2.parse("x1^2 - x1*y1")  # -1 = +1 over F_2
    assert T2.parse("0").is_zero()
    assert T3.parse("3*x1").is_zero()
    assert str(T3.parse("-x1 + 4*y1")) == "2*x1 + y1"


@pytest.mark.parametrize("text, pos", [("x1 +", 4), ("z1", 0), ("2*(x1", 5), ("x1^-1", 3)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as err:
        T2.parse(text)
    assert err.value.position == pos


def test_format_parse_round_trip():
    f = T3.parse("2*x1^3*y2 + y3^2 + x1 + 1")
    assert T3.parse(str(f)) == f
    assert str(f) == "2*x1^3*y2 + y3^2 + x1 + 1"


def test_arith_examples():
    assert T2.parse("(x1 + y1)^2") == T2.parse("x1^2 + y1^2")
    assert (T2.parse("x1*y2 + 1") * T2.zero()).is_zero()
    assert T3.parse("(x1 + y1)^3") == T3.parse("x1^3 + y1^3")
    f, g = T3.parse("x1 + y1"), T3.parse("x2^2 - y3*x1")
    assert (f * g).degree() == f.degree() + g.degree()


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        T2.parse("x1") + T3.parse("x1")


def test_substitute_examples():
    M = block_matrix(2, [1, 0, 0])
    assert substitute_linear(T2.parse("x1"), M) == T2.parse("x1 + y1")
    assert substitute_linear(T2.parse("y1"), M) == T2.parse("y1")
    f = T2.parse("x1^2 + x1*y1")
    assert substitute_linear(f, M) == f
    expanded = oracles.substitute(f.coeffs, M.to_lists(), 2)
    assert expanded == f.coeffs


def test_substitute_dimension_mismatch():
    with pytest.raises(ValueError):
        substitute_linear(T2.parse("x1"), MatrixFp.identity(2, 2))


def test_monomials_of_degree_examples():
    assert len(monomials_of_degree(T2, 1)) == 6
    assert monomials_of_degree(T2, 0) == [(0,) * 6]
    assert len(monomials_of_degree(T2, 2)) == 21 == oracles.count_combinations(6, 2)
    W = PolynomialRing(5, ["a", "b", "c"], [1, 2, 3])
    for n in range(12):
        mons = monomials_of_degree(W, n)
        assert len(mons) == count_monomials([1, 2, 3], n) == len(oracles.monomials([1, 2, 3], n))
        assert len(set(mons)) == len(mons)
        assert all(W.mono_degree(m) == n for m in mons)
        assert mons == sorted(mons, key=W.dkey)


def test_orders():
    lex = PolynomialRing(7, ["x", "y"], order=MonomialOrder("lex"))
    assert lex.parse("x*y + y^3").leading_monomial() == (1, 1)
    grev = PolynomialRing(7, ["x", "y", "z"])
    assert grev.parse("x*z + y^2").leading_monomial() == (0, 2, 0)
    blk = PolynomialRing(7, ["x", "t"], order=MonomialOrder.parse("block:1"))
    assert blk.parse("t^5 + x").leading_monomial() == (1, 0)
    assert MonomialOrder.parse("block(3)") == MonomialOrder("block", 3)
    with pytest.raises(ValueError):
        MonomialOrder("revlex")


def test_homogeneous_components_and_degree():
    f = T3.parse("x1^2 + y1 + 2")
    assert not f.is_homogeneous()
    comps = f.homogeneous_components()
    assert sorted(comps) == [0, 1, 2]
    assert sum(comps.values(), T3.zero()) == f
    assert T3.zero().degree() == -1


# -- properties ------------------------------------------------------------

SMALL = PolynomialRing(3, ["a", "b", "c"])
WEIGHTED = PolynomialRing(5, ["a", "b", "c"], [1, 2, 1])


def polys(ring, max_terms=5, max_exp=3):
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mono, st.integers(1, ring.p - 1), max_size=max_terms).map(ring.from_dict)


def invertible(p, n):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(lambda r: MatrixFp(r, p))


@settings(max_examples=100, deadline=None)
@given(polys(SMALL))
def test_add_negation_is_zero(f):
    assert (f + (-f)).is_zero()
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(SMALL, 4, 2), invertible(3, 3), invertible(3, 3))
def test_action_composition(f, M, N):
    assert substitute_linear(substitute_linear(f, N), M) == substitute_linear(f, N @ M)


@settings(max_examples=60, deadline=None)
@given(polys(SMALL, 4, 2), invertible(3, 3))
def test_substitution_matches_oracle(f, M):
    assert substitute_linear(f, M).coeffs == oracles.substitute(f.coeffs, M.to_lists(), 3)


@settings(max_examples=80, deadline=None)
@given(polys(WEIGHTED), polys(WEIGHTED))
def test_grading_is_respected(f, g):
    prod = f * g
    expect = WEIGHTED.zero()
    for a, fa in f.homogeneous_components().items():
        for b, gb in g.homogeneous_components().items():
            expect = expect + fa * gb
    assert prod == expect
    for n, comp in prod.homogeneous_components().items():
        assert comp.is_homogeneous() and comp.degree() == n
    assert prod.coeffs == oracles.pmul(f.coeffs, g.coeffs, 5)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["grevlex", "lex", "block:1", "block:2"]),
       st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=3, max_size=3))
def test_order_axioms(kind, monos):
    ring = PolynomialRing(3, ["a", "b", "c"], [1, 2, 1], MonomialOrder.parse(kind))
    key = ring.dkey
    m1, m2, m = monos
    one = (0, 0, 0)
    if m1 != one:
        assert key(m1) < key(one)  # 1 is the smallest monomial
    if key(m1) < key(m2):
        s1 = tuple(a + b for a, b in zip(m, m1))
        s2 = tuple(a + b for a, b in zip(m, m2))
        assert key(s1) < key(s2)
    if all(a <= b for a, b in zip(m1, m2)) and m1 != m2:
        assert key(m2) < key(m1)  # refines divisibility
