import pytest

from gkmkalc.gkm import equivalent_presentations, invariant_rank, is_member, window_member_rank
from gkmkalc.rankone import (RankOneCase, base_change, check_extra_relation,
                             g_equivariant_presentation, golden_presentations, iota_dual,
                             rs_small, small_graph, toric_graph, twisted_invariant_report,
                             w0_action, w0_group, w0_is_automorphism)

CASES = [RankOneCase("P2"), RankOneCase("P1xP1")] + [RankOneCase("Fn", n) for n in (1, 2, 3, 5)]


def labels(g):
    return sorted((tuple(sorted((e.u, e.v))), e.chi, e.n) for e in g.edges)


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.name)
def test_base_change_matches_golden(case):
    gold = golden_presentations(case)
    g = small_graph(case)
    assert equivalent_presentations(g, gold["small"], B=3)
    assert labels(g) == labels(gold["small"])


def test_p2_small_edges():
    g = small_graph(RankOneCase("P2"))
    assert labels(g) == [(("s12", "s13"), (1,), 1), (("s12", "s23"), (1,), 1),
                         (("s13", "s23"), (1,), 2)]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_fn_moduli(n):
    q = g_equivariant_presentation(RankOneCase("Fn", n))
    assert q.vertices == ["s12", "s23", "s14"]
    assert labels(q) == [(("s12", "s14"), (1,), n), (("s12", "s23"), (1,), 2 * n)]


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.name)
def test_quotient_matches_golden(case):
    q = g_equivariant_presentation(case)
    assert equivalent_presentations(q, golden_presentations(case)["quotient"], B=3)


def test_w0_pattern():
    perm, A = w0_action(RankOneCase("P2"))
    assert perm == {"s12": "s12", "s23": "s13", "s13": "s23"} and A == [[-1]]
    for case in CASES[1:]:
        perm, _ = w0_action(case)
        fixed = sorted(x for x in perm if perm[x] == x)
        assert fixed == ["s14", "s23"] and perm["s12"] == "s34"
    assert w0_is_automorphism(RankOneCase("P2")) is None
    assert w0_is_automorphism(RankOneCase("P1xP1")) is None
    # on Fn the flip also exchanges the moduli 1 and 2n, so it is only a permutation symmetry
    assert w0_is_automorphism(RankOneCase("Fn", 2)) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("B", [1, 2, 3])
def test_invariants_equal_quotient_members(n, B):
    case = RankOneCase("Fn", n)
    g = small_graph(case)
    assert invariant_rank(g, w0_group(case), B, strict=False) == \
        window_member_rank(g_equivariant_presentation(case, B), B)


def test_twisted_report():
    rep = twisted_invariant_report(RankOneCase("P2"))
    assert rep["permutation_invariant_rank"] == rep["quotient_member_rank"] == 9
    assert rep["twisted_invariant_rank"] == 7


@pytest.mark.parametrize("case,text", [
    (RankOneCase("P2"), "x1*x2*x3^-2 = 1"),
    (RankOneCase("P1xP1"), "x1*x3^-1 = x2*x4^-1"),
    (RankOneCase("Fn", 1), "x1*x3^-1 = x2*x3*x4^-1"),
    (RankOneCase("Fn", 3), "x1^3*x3^-3 = x2*x3^3*x4^-1"),
])
def test_rs_small(case, text):
    s = rs_small(case)
    assert s.extra_relation_text() == text
    assert check_extra_relation(s)
    g = small_graph(case)
    for f in s.images:
        assert is_member(g, f)
    assert s.relation_subsets == s.rs.relation_subsets


def test_base_change_rejects_bad_maps():
    g = toric_graph(RankOneCase("P2"))
    with pytest.raises(ValueError):
        base_change(g, [[2, 0]])
    with pytest.raises(ValueError):
        base_change(g, [[1, 0, 0]])
    with pytest.warns(UserWarning):
        base_change(g, [[1, 0]])
    assert iota_dual(RankOneCase("Fn", 4)) == [[1, 4]]
    with pytest.raises(ValueError):
        RankOneCase("Fn", 0)
