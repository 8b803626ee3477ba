from fractions import Fraction

from gkmkalc.charlat import LaurentPoly
from gkmkalc.gkm import make_class
from gkmkalc.grr import (TruncatedSeries, ch_truncated, divisible_by_power, k_to_chow,
                         tau_one_minus, verify_transport)
from gkmkalc.rankone import RankOneCase, small_graph
from gkmkalc.toric import rs_presentation
from gkmkalc.fan import surface_catalog


def test_tau_coefficients():
    t = tau_one_minus((1,), 1, 4)
    assert t.terms == {(1,): Fraction(1, 2), (2,): Fraction(-1, 6), (3,): Fraction(1, 24),
                       (4,): Fraction(-1, 120)}
    assert t.pretty() == "1/2*t - 1/6*t^2 + 1/24*t^3 - 1/120*t^4"


def test_tau_times_linear_is_ch():
    # x tau(1 - chi) = x - 1 + ch(chi^-1) with x the linear form of chi, up to degree N
    N = 5
    lin = TruncatedSeries.linear((1, 2), N)
    lhs = lin * tau_one_minus((1, 2), 1, N)
    rhs = lin - TruncatedSeries.one(2, N) + ch_truncated(LaurentPoly.monomial((-1, -2)), N)
    assert lhs == rhs


def test_ch_is_multiplicative():
    f = LaurentPoly({(1, 0): 2, (0, -1): 1})
    g = LaurentPoly({(1, 1): 1, (0, 0): -1})
    assert ch_truncated(f * g, 4) == ch_truncated(f, 4) * ch_truncated(g, 4)


def test_divisibility():
    t1 = TruncatedSeries.linear((1, 0), 3)
    t2 = TruncatedSeries.linear((0, 1), 3)
    p = (t1 * t1 * t2).component(3)
    assert divisible_by_power(p, (1, 0), 2)
    assert not divisible_by_power(p, (1, 0), 3)
    assert divisible_by_power(p, (0, 1), 1)
    assert not divisible_by_power((t1 + t2).component(1), (1, -1), 1)


def test_chow_graph_p2_small():
    g = small_graph(RankOneCase("P2"))
    cg = k_to_chow(g)
    assert sorted((p, m) for *_, p, m, _ in cg.edges) == [(1, 1), (1, 1), (1, 2)]
    x = lambda e: LaurentPoly.monomial((e,))
    zero = LaurentPoly.zero(1)
    assert verify_transport(g, make_class(g, [zero, LaurentPoly.one(1) - x(2), zero]))["pass"]


def test_transport_rs_images():
    rs = rs_presentation(surface_catalog("Fn", 2))
    for f in rs.images:
        assert verify_transport(rs.graph, f)["pass"]


def test_transport_rejects_non_members():
    g = small_graph(RankOneCase("P2"))
    one = LaurentPoly.one(1)
    rep = verify_transport(g, make_class(g, [one, one + one, one]))
    assert not rep["pass"] and rep["failures"][0]["degree"] == 0
