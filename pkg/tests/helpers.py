"""Shared fixtures-by-function: the graph catalog and random member classes."""

from gkmkalc.charlat import LaurentPoly, is_primitive
from gkmkalc.fan import projective_space, surface_catalog
from gkmkalc.gkm import PiecewiseClass, window_members
from gkmkalc.rankone import RankOneCase, base_change, g_equivariant_presentation, small_graph
from gkmkalc.toric import gkm_from_fan

TORIC = [("P1", None), ("P2", None), ("P1xP1", None), ("Fn", 1), ("Fn", 2), ("Fn", 3), ("Fn", 5)]
RANK_ONE = [RankOneCase("P1"), RankOneCase("P2"), RankOneCase("P1xP1")] + \
    [RankOneCase("Fn", n) for n in (1, 2, 3, 5)]


def catalog_graphs():
    out = {}
    for name, n in TORIC:
        f = surface_catalog(name, n)
        out[f.name] = gkm_from_fan(f)
    out["P3"] = gkm_from_fan(projective_space(3))
    for case in RANK_ONE:
        out[case.name + "|small"] = small_graph(case)
        if case.kind != "P1":
            out[case.name + "|G"] = g_equivariant_presentation(case)
    return out


def random_member(rng, g, basis, k=3, c=2):
    vals = None
    for f in rng.sample(basis, min(k, len(basis))):
        a = rng.choice([x for x in range(-c, c + 1) if x])
        term = PiecewiseClass({x: a * v for x, v in f.items()}, f.vertices)
        vals = term if vals is None else vals + term
    return vals


def member_basis(g):
    return window_members(g, 1)


# ---------------------------------------------------------------- toric goldens

def mono(*e):
    return LaurentPoly.monomial(e)


def edge_set(edges):
    return {(frozenset((u, v)), tuple(chi), n) for u, v, chi, n in edges}


def golden_edges(name, n=None):
    if name == "P1":
        return [("s1", "s2", (1,), 1)]
    if name == "P2":
        return [("s12", "s23", (1, 0), 1), ("s12", "s13", (0, 1), 1),
                ("s23", "s13", (-1, 1), 1)]
    if name == "P1xP1":
        n = 0
    return [("s12", "s23", (1, 0), 1), ("s23", "s34", (n, 1), 1),
            ("s34", "s14", (1, 0), 1), ("s14", "s12", (0, 1), 1)]


def golden_images(name, n=None):
    if name == "P1":
        # the second generator is x^-1 on its own cone (dual basis of the ray -1)
        return [(mono(1), mono(0)), (mono(0), mono(-1))]
    if name == "P2":
        return [(mono(1, 0), mono(0, 0), mono(1, -1)),
                (mono(0, 1), mono(-1, 1), mono(0, 0)),
                (mono(0, 0), mono(-1, 0), mono(0, -1))]
    if name == "P1xP1":
        n = 0
    one = mono(0, 0)
    return [(mono(1, 0), one, one, mono(1, 0)),
            (mono(0, 1), mono(n, 1), one, one),
            (one, mono(-1, 0), mono(-1, 0), one),
            (one, one, mono(-n, -1), mono(0, -1))]


# ---------------------------------------------------------------- division oracle

def _steps_between(e, d, step):
    """k with e - d = k * step, or None."""
    i = next(j for j, s in enumerate(step) if s)
    diff = [x - y for x, y in zip(e, d)]
    if diff[i] % step[i]:
        return None
    k = diff[i] // step[i]
    return k if all(a == k * s for a, s in zip(diff, step)) else None


def long_division(f, chi, n):
    """Push terms down along chi^n while another term sits lower on the same line; return the remainder.

    Moving c chi^e to c chi^(e - n chi) subtracts a multiple of (1 - chi^n),
    so f is divisible iff nothing is left.
    """
    step = tuple(n * c for c in chi)
    terms = dict(f.items())
    while True:
        for e in list(terms):
            ks = [_steps_between(e, d, step) for d in terms if d != e]
            if any(k is not None and k >= 1 for k in ks):
                c = terms.pop(e)
                d = tuple(x - s for x, s in zip(e, step))
                terms[d] = terms.get(d, 0) + c
                if not terms[d]:
                    del terms[d]
                break
        else:
            return terms


def random_primitive(rng, r):
    while True:
        chi = tuple(rng.randint(-3, 3) for _ in range(r))
        if any(chi) and is_primitive(chi):
            return chi


def random_poly(rng, r, terms=4, E=5):
    return LaurentPoly({tuple(rng.randint(-E, E) for _ in range(r)): rng.randint(-4, 4)
                        for _ in range(terms)}, r)


# ---------------------------------------------------------------- P3 oracle

# T of PSL2 x PSL2 acts on the entries of a 2x2 matrix by a b^-1, a b, a^-1 b^-1, a^-1 b.
# Characters x_i/x_0 of the P3 torus restrict to (in simple root coordinates)
# alpha_2, -alpha_1, alpha_2 - alpha_1.
P3_RESTRICTION = [[0, -1, -1], [1, 0, 1]]


def p3_oracle():
    return base_change(gkm_from_fan(projective_space(3)), P3_RESTRICTION)
