import pytest

from gkmkalc.fan import is_complete, is_smooth, surface_catalog
from gkmkalc.gkm import is_member
from gkmkalc.rootdata import RootDataError, bundled_datum, Involution
from gkmkalc.toric import gkm_from_fan
from gkmkalc.wonderful import (build_gkm_X, build_gkm_Y, build_minimal_rank, curves,
                               g_equivariant_K, isomorphism, load_instance,
                               same_restricted_system, toric_Y_fan, translate_class,
                               verify_product_decomposition, y_fan_consistent, _blocks)

from helpers import p3_oracle


def test_group_case_is_p3():
    m = load_instance("A1xA1-swap")
    X = build_gkm_X(m)
    assert len(X.vertices) == 4 and len(X.edges) == 6
    assert isomorphism(X, p3_oracle()) is not None


def test_group_case_y_is_p1():
    m = load_instance("A1xA1-swap")
    Y = build_gkm_Y(m, split=True)
    assert isomorphism(Y, gkm_from_fan(surface_catalog("P1"))) is not None
    assert len(build_gkm_Y(m).edges) == 1


def test_curve_types_group_case():
    cs = curves(load_instance("A1xA1-swap"))
    assert {c.type for c in cs} <= {"1", "2", "1+2"}
    assert sum(c.type in ("2", "1+2") for c in cs) >= 1


def test_a3_psp_x_is_complete_graph():
    m = load_instance("A3-psp")
    X = build_gkm_X(m)
    assert len(X.vertices) == 6 and len(X.edges) == 15
    pairs = {frozenset((e.u, e.v)) for e in X.edges}
    assert len(pairs) == 15


@pytest.mark.parametrize("name", ["A1xA1-swap", "D2", "A3-psp", "A2xA2-swap"])
def test_chamber_fan(name):
    m = load_instance(name)
    f = toric_Y_fan(m)
    assert is_smooth(f) and is_complete(f)
    assert y_fan_consistent(m)
    assert len(f.max_cones) == len(m.restricted.weyl)


def test_a2xa2_summary():
    m = load_instance("A2xA2-swap")
    s = m.summary()
    assert s["W_G/H"] == 6 and s["restricted_cartan"] == [[2, -1], [-1, 2]]
    assert len(build_gkm_Y(m).vertices) == 6 and len(build_gkm_Y(m).edges) == 6


def test_family_coincidence():
    a, b = load_instance("A1xA1-swap"), load_instance("A3-psp")
    assert same_restricted_system(a, b)
    assert not same_restricted_system(a, load_instance("A2xA2-swap"))
    ka, kb = g_equivariant_K(a, 2), g_equivariant_K(b, 2)
    assert ka["split"] == kb["split"] and ka["pass"] and kb["pass"]


def test_product_decomposition_report():
    m = load_instance("A1xA1-swap")
    rep = verify_product_decomposition(m, 1)
    assert rep["blocks"] == ["e", "s1"]
    assert rep["bookkeeping"]["|W^H|*rank(Y)"] == 2 * rep["y_member_rank"]
    assert {c["name"] for c in rep["checks"]} == {
        "translated Y-members satisfy all X congruences",
        "span of translates has the X window rank"}


def test_translates_of_y_classes_are_supported_on_blocks():
    m = load_instance("A1xA1-swap")
    X, Y = build_gkm_X(m), build_gkm_Y(m)
    from gkmkalc.gkm import constant_class
    one = constant_class(Y)
    seen = set()
    for w, block in _blocks(m):
        h = translate_class(m, X, w, block, one)
        support = {x for x, v in h.items() if not v.is_zero()}
        assert support == set(block.values())
        seen |= support
    assert seen == set(X.vertices)
    assert is_member(Y, one)


def test_not_minimal_rank():
    d = bundled_datum("A2")
    # SL3/SO3: split rank 2, but H has rank 1 while the fixed lattice is zero
    build_minimal_rank(d, Involution([[-1, 0], [0, -1]], d))
    with pytest.raises(RootDataError):
        build_minimal_rank(d, Involution([[-1, 0], [0, -1]], d), bundled_datum("A1"))
