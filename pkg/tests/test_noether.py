import pytest

from paperlab.groups import closure
from paperlab.invariants import minimal_generators
from paperlab.noether import NormalizationError, module_presentation
from paperlab.polyring import PolynomialRing
from paperlab.resolution import module_leading_terms, resolve_module
from paperlab.scenario import build_R_generators, build_example_main
from paperlab.structure import depth_report, presentation_ideal


def module_of(H, T, theta, D):
    gens = minimal_generators(H, T, D)
    pres = presentation_ideal(gens.polys, T)
    return pres, module_presentation(H, T, theta, pres.hilbert_series(), max(gens.degrees))


@pytest.fixture(scope="module")
def sc2():
    return build_example_main(2)


def test_s_as_module_over_r(sc2):
    theta = build_R_generators(sc2).polys
    pres, mp = module_of(sc2.H, sc2.ring, theta, 3)
    assert mp.shifts == [0, 2, 2, 2, 3]
    assert len(mp.relations) == 1
    betti = mp.resolve()
    assert betti.betti == {0: {0: 1, 2: 3, 3: 1}, 1: {3: 1}}
    assert mp.depth == 5
    assert mp.matches_series(pres.hilbert_series())
    assert mp.euler_check(pres.hilbert_series())
    # generic rank is |G/H|
    assert betti.total(0) - betti.total(1) == 4
    assert depth_report(pres).depth == mp.depth


def test_invariants_of_g_are_free_of_rank_one(sc2):
    theta = build_R_generators(sc2).polys
    _, mp = module_of(sc2.G, sc2.ring, theta, 2)
    assert mp.num_generators == 1 and mp.relations == []
    assert mp.depth == 6


def test_polynomial_ring_over_itself():
    T = PolynomialRing(3, ["a", "b", "c"])
    triv = closure([], p=3, n=3)
    _, mp = module_of(triv, T, T.gens(), 1)
    assert mp.num_generators == 1 and mp.depth == 3


def test_wrong_series_is_not_certified(sc2):
    theta = build_R_generators(sc2).polys
    gens = minimal_generators(sc2.H, sc2.ring, 3)
    wrong = presentation_ideal(gens.polys[:-1], sc2.ring).hilbert_series()
    with pytest.raises(NormalizationError):
        module_presentation(sc2.H, sc2.ring, theta, wrong, 3, max_degree=8)


def test_theta_must_be_homogeneous(sc2):
    bad = [sc2.y(1) + sc2.x(1) ** 2]
    with pytest.raises(NormalizationError):
        module_presentation(sc2.H, sc2.ring, bad, None, 1)


def test_resolve_module_small():
    R = PolynomialRing(5, ["a", "b"])
    # coker of a*e0 + b*e1 on two generators of degree 0
    rel = {(0, (1, 0)): 1, (1, (0, 1)): 1}
    betti = resolve_module(R, [0, 0], [rel])
    assert betti.betti == {0: {0: 2}, 1: {1: 1}}
    assert module_leading_terms(R, [0, 0], [rel]) == [(0, (1, 0))]


def test_both_depth_routes_agree_on_cyclic_subgroups(sc2):
    theta = build_R_generators(sc2).polys
    seen = set()
    for g in sc2.G.elements:
        K = closure([g], p=2, n=6)
        key = frozenset(h.key() for h in K.elements)
        if key in seen:
            continue
        seen.add(key)
        pres, mp = module_of(K, sc2.ring, theta, 3)
        assert depth_report(pres).depth == mp.depth
        assert mp.euler_check(pres.hilbert_series())
    assert len(seen) == 8
