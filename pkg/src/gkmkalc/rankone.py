"""Rank one SL2 / PSL2 compactifications: P1, P2, P1xP1 and the Hirzebruch surfaces Fn.

Each case is a toric surface for a two dimensional torus T containing the
one dimensional torus of SL2 through a fixed embedding.  Restricting
characters along that embedding and dividing out the nontrivial Weyl element
gives the SL2-equivariant presentations.
"""

import warnings

from . import intlin
from .charlat import apply_lattice_map, primitive_part, sign_normalize
from .fan import surface_catalog
from .gkm import (GKMError, GKMGraph, PiecewiseClass, automorphism_defect,
                  invariant_rank, make_cell, quotient_presentation,
                  window_member_rank)
from .toric import gkm_from_fan, rs_presentation

KINDS = ("P1", "P2", "P1xP1", "Fn")


class RankOneCase:
    def __init__(self, kind, n=None):
        if kind not in KINDS:
            raise ValueError("unknown rank one case %r" % (kind,))
        if kind == "Fn":
            if n is None or int(n) < 1:
                raise ValueError("Fn needs n >= 1")
            n = int(n)
        else:
            n = None
        self.kind = kind
        self.n = n

    def __repr__(self):
        return "RankOneCase(%s%s)" % (self.kind, "" if self.n is None else ", n=%d" % self.n)

    @property
    def name(self):
        return self.kind if self.n is None else "F%d" % self.n

    def fan(self):
        return surface_catalog(self.kind, self.n)


def iota_dual(case):
    """Row matrix restricting characters of T to the one dimensional torus."""
    return {"P1": [[1]], "P2": [[1, -1]], "P1xP1": [[1, 1]], "Fn": [[1, case.n]]}[case.kind]


def toric_graph(case):
    return gkm_from_fan(case.fan())


def _is_surjective(A):
    rows = [list(r) for r in A]
    return intlin.rank(rows, len(rows[0])) == len(rows) and \
        intlin.snf_diagonal(rows, len(rows[0])) == [1] * len(rows)


def base_change(g, A):
    """Relabel every congruence along the character map A.

    (1 - chi^n) becomes (1 - (A chi)^n), written as (primitive, exponent).
    Edges whose label dies are dropped with a warning.
    """
    A = [list(r) for r in A]
    if len(A[0]) != g.rank:
        raise ValueError("map has %d columns, graph has rank %d" % (len(A[0]), g.rank))
    if not _is_surjective(A):
        raise ValueError("character map is not surjective")
    edges = []
    for e in g.edges:
        img = intlin.matvec(A, [e.n * x for x in e.chi])
        if not any(img):
            warnings.warn("edge %s-%s degenerates under base change; dropped" % (e.u, e.v))
            continue
        chi, m = primitive_part(img)
        edges.append((e.u, e.v, sign_normalize(chi), m))
    cells = []
    for c in g.cells:
        img = intlin.matvec(A, c.chi)
        if not any(img):
            warnings.warn("cell on %s degenerates under base change; dropped" % ",".join(c.verts))
            continue
        chi, d = primitive_part(img)
        if d == 1:
            cells.append(make_cell(c.kind, c.verts, sign_normalize(chi), c.n))
        else:
            for k in c.constraints():
                edges.append((k.u, k.v, sign_normalize(chi), k.n * d))
    return GKMGraph(len(A), g.vertices, edges, cells, name=(g.name or "gkm") + "|T'")


def small_graph(case):
    return base_change(toric_graph(case), iota_dual(case))


def w0_action(case):
    """Vertex permutation of the nontrivial Weyl element and its matrix chi -> chi^-1."""
    labels = toric_graph(case).vertices
    perm = {x: x for x in labels}
    if case.kind == "P1":
        perm = {"s1": "s2", "s2": "s1"}
    elif case.kind == "P2":
        perm.update({"s23": "s13", "s13": "s23"})
    else:
        perm.update({"s12": "s34", "s34": "s12"})
    return perm, [[-1]]


def w0_is_automorphism(case):
    """Does the fixed/swapped pattern of w0 respect the small-torus congruences?"""
    perm, A = w0_action(case)
    return automorphism_defect(small_graph(case), perm, A, strict=True)


def w0_group(case):
    """<w0> as it enters the G-equivariant presentation: permutation, trivial on R(T')."""
    perm, _ = w0_action(case)
    return [(perm, [[1]])]


def g_equivariant_presentation(case, B=2):
    g = small_graph(case)
    q = quotient_presentation(g, w0_group(case), B=B, strict=False)
    q.name = case.name + "/PSL2"
    return q


def twisted_invariant_report(case, B=2):
    """Window ranks with w0 also inverting characters, against the quotient presentation."""
    g = small_graph(case)
    perm, A = w0_action(case)
    strict = automorphism_defect(g, perm, A, strict=True) is None
    twisted = invariant_rank(g, [(perm, A)], B, strict=False)
    plain = invariant_rank(g, w0_group(case), B, strict=False)
    quot = window_member_rank(g_equivariant_presentation(case, B), B)
    return {"case": case.name, "window": B, "w0_strict_automorphism": strict,
            "twisted_invariant_rank": twisted, "permutation_invariant_rank": plain,
            "quotient_member_rank": quot}


class SmallRS:
    def __init__(self, case, rs, A, kernel, lhs, rhs, images):
        self.case = case
        self.rs = rs
        self.A = A
        self.kernel = kernel
        self.lhs = lhs
        self.rhs = rhs
        self.images = images

    @property
    def relation_subsets(self):
        return self.rs.relation_subsets

    def extra_relation_text(self):
        return "%s = %s" % (_mono_text(self.lhs), _mono_text(self.rhs))

    def to_json(self):
        return {
            "case": self.case.name,
            "generators": self.rs.generators,
            "relation_subsets": [sorted(i + 1 for i in s) for s in self.rs.relation_subsets],
            "extra_relation": {"lhs": self.lhs, "rhs": self.rhs,
                               "text": self.extra_relation_text()},
            "kernel_character": self.kernel,
        }


def _mono_text(a):
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append("x%d" % (i + 1))
        elif e:
            parts.append("x%d^%d" % (i + 1, e))
    return "*".join(parts) or "1"


def rs_small(case):
    """RS data of the big torus plus the relation chi^k = 1 for the kernel character k of the restriction.

    The module action sends chi^m to prod x_rho^{<m, v_rho>}; k is split
    into its positive and negative parts to print the relation as an
    equality of monomials.
    """
    rs = rs_presentation(case.fan())
    A = iota_dual(case)
    r = len(A[0])
    ker = intlin.integer_kernel(A, r)
    if not ker:
        k = None
        lhs = rhs = [0] * len(case.fan().rays)
    else:
        (k,) = ker
        k = list(k)
        if next(x for x in k if x) < 0:
            k = [-x for x in k]
        lhs = [0] * len(rs.fan.rays)
        rhs = [0] * len(rs.fan.rays)
        for i, ki in enumerate(k):
            if not ki:
                continue
            act = rs.character_exponents([int(i == j) for j in range(r)])
            tgt = lhs if ki > 0 else rhs
            for j, a in enumerate(act):
                tgt[j] += abs(ki) * a
    g = small_graph(case)
    images = [PiecewiseClass({x: apply_lattice_map(A, f[x]) for x in g.vertices}, g.vertices)
              for f in rs.images]
    return SmallRS(case, rs, A, k, lhs, rhs, images)


def check_extra_relation(srs):
    """The relation holds after restriction: both sides give the same class on the small graph."""
    g = small_graph(srs.case)
    lhs = srs.rs.monomial(srs.lhs)
    rhs = srs.rs.monomial(srs.rhs)
    A = srs.A
    for x in g.vertices:
        if apply_lattice_map(A, lhs[x]) != apply_lattice_map(A, rhs[x]):
            return False
    return True


def golden_presentations(case):
    """Reference small graphs and PSL2 quotients, written out by hand (fixed vertex order)."""
    n = case.n
    one = (1,)
    if case.kind == "P1":
        return None
    if case.kind == "P2":
        return {
            "small": GKMGraph(1, ["s12", "s23", "s13"],
                              [("s12", "s23", one, 1), ("s12", "s13", one, 1),
                               ("s23", "s13", one, 2)]),
            "quotient": GKMGraph(1, ["s12", "s13"], [("s12", "s13", one, 1)]),
        }
    if case.kind == "P1xP1":
        vs = ["s12", "s23", "s34", "s14"]
        small = [(vs[i], vs[j], one, 1) for i in range(4) for j in range(i + 1, 4)]
        q = ["s12", "s23", "s14"]
        return {
            "small_pairwise": GKMGraph(1, vs, small),
            "small": GKMGraph(1, vs, [("s12", "s23", one, 1), ("s23", "s34", one, 1),
                                      ("s34", "s14", one, 1), ("s14", "s12", one, 1)]),
            "quotient": GKMGraph(1, q, [(q[i], q[j], one, 1)
                                        for i in range(3) for j in range(i + 1, 3)]),
        }
    if case.kind == "Fn":
        return {
            "small": GKMGraph(1, ["s12", "s23", "s34", "s14"],
                              [("s12", "s23", one, 1), ("s23", "s34", one, 2 * n),
                               ("s34", "s14", one, 1), ("s14", "s12", one, n)]),
            "quotient": GKMGraph(1, ["s12", "s23", "s14"],
                                 [("s12", "s23", one, 2 * n), ("s14", "s12", one, n)]),
        }
    raise GKMError("no golden data for %r" % (case,))
