import pytest

from gkmkalc.fan import FanError, Fan, projective_space, surface_catalog
from gkmkalc.gkm import is_member
from gkmkalc.toric import (gkm_from_fan, relation_product, rs_presentation, verify_rs,
                           window_surjectivity)

from helpers import edge_set, golden_edges, golden_images, mono

CASES = [("P1", None), ("P2", None), ("P1xP1", None)] + [("Fn", n) for n in (1, 2, 3, 5)]


@pytest.mark.parametrize("name,n", CASES)
def test_gkm_lists(name, n):
    g = gkm_from_fan(surface_catalog(name, n))
    assert edge_set(g.edges) == edge_set(golden_edges(name, n))


@pytest.mark.parametrize("name,n", CASES)
def test_rs_images(name, n):
    rs = rs_presentation(surface_catalog(name, n))
    got = [tuple(f[x] for x in rs.graph.vertices) for f in rs.images]
    assert got == golden_images(name, n)


def test_relations():
    assert rs_presentation(surface_catalog("P2")).relation_subsets == [frozenset({0, 1, 2})]
    subsets = rs_presentation(surface_catalog("Fn", 2)).relation_subsets
    assert sorted(map(sorted, subsets)) == [[0, 2], [1, 3]]
    rs = rs_presentation(surface_catalog("P1xP1"))
    for s in rs.relation_subsets:
        p = relation_product(rs, s)
        assert all(v.is_zero() for _, v in p.items())


def test_images_are_members_p3():
    rs = rs_presentation(projective_space(3))
    assert len(rs.graph.edges) == 6
    for f in rs.images:
        assert is_member(rs.graph, f)


def test_module_action():
    rs = rs_presentation(surface_catalog("Fn", 3))
    # chi_2 acts as x2 x3^3 x4^-1 on F3
    assert rs.character_exponents([0, 1]) == [0, 1, 3, -1]
    f = rs.monomial(rs.character_exponents([1, 0]))
    assert all(f[x] == mono(1, 0) for x in rs.graph.vertices)


@pytest.mark.parametrize("name,n", [("P1", None), ("P2", None), ("P1xP1", None), ("Fn", 1)])
def test_verify_rs(name, n):
    rep = verify_rs(surface_catalog(name, n), B=2)
    assert rep["pass"], [c for c in rep["checks"] if not c["pass"]]


def test_window_surjectivity_p3():
    span, members, ok = window_surjectivity(rs_presentation(projective_space(3)), 1)
    assert ok and span == members


def test_rejects_bad_fans():
    with pytest.raises(FanError):
        gkm_from_fan(Fan([(1, 0), (1, 2), (-1, -1)], [[0, 1], [1, 2], [0, 2]]))
    with pytest.raises(FanError):
        gkm_from_fan(Fan([(1, 0), (0, 1)], [[0, 1]]))
