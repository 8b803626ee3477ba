"""Equivariant K-theory of smooth complete toric varieties.

gkm_from_fan gives the congruence description on maximal cones; the
Reisner–Stanley presentation sends the generator x_rho to the dual basis
character at cones containing rho and to 1 elsewhere.
"""

from itertools import combinations, product

from . import intlin
from .charlat import LaurentPoly, window_monomials
from .fan import FanError, dual_basis, is_complete, is_smooth, wall_character
from .gkm import GKMGraph, PiecewiseClass, Window, is_member


def _require(fan):
    if not is_smooth(fan):
        raise FanError("fan is not smooth")
    if not is_complete(fan):
        raise FanError("fan is not complete")


def gkm_from_fan(fan):
    """One edge (wall character, 1) for each pair of maximal cones sharing a wall."""
    _require(fan)
    labels = fan.labels()
    edges = []
    cones = fan.max_cones
    for i, j in combinations(range(len(cones)), 2):
        wall = cones[i] & cones[j]
        if len(wall) == fan.rank - 1:
            edges.append((labels[i], labels[j], wall_character(fan, wall), 1))
    return GKMGraph(fan.rank, labels, edges, name=fan.name)


class RSPresentation:
    def __init__(self, fan, graph, images, relation_subsets):
        self.fan = fan
        self.graph = graph
        self.images = images
        self.relation_subsets = relation_subsets

    @property
    def generators(self):
        return ["x%d" % (i + 1) for i in range(len(self.fan.rays))]

    def monomial(self, a):
        """Image of prod x_rho^{a_rho}: at sigma the character sum a_rho v_rho^dual."""
        vals = {}
        for lab, cone in zip(self.fan.labels(), self.fan.max_cones):
            duals = _duals(self.fan, cone)
            chi = [0] * self.fan.rank
            for i in cone:
                for k in range(self.fan.rank):
                    chi[k] += a[i] * duals[i][k]
            vals[lab] = LaurentPoly.monomial(chi)
        return PiecewiseClass(vals, self.graph.vertices)

    def character_exponents(self, m):
        """x-exponents of the module action of chi^m: a_rho = <m, v_rho>."""
        return [sum(x * y for x, y in zip(m, r)) for r in self.fan.rays]

    def to_json(self):
        return {
            "generators": self.generators,
            "images": {g: self.images[i].to_json()["values"]
                       for i, g in enumerate(self.generators)},
            "relation_subsets": [sorted(i + 1 for i in s) for s in self.relation_subsets],
        }


_dual_cache = {}


def _duals(fan, cone):
    key = (tuple(fan.rays), cone)
    if key not in _dual_cache:
        _dual_cache[key] = dual_basis(fan, cone)
    return _dual_cache[key]


def minimal_nonfaces(fan):
    nrays = len(fan.rays)
    out = []
    for k in range(1, fan.rank + 2):
        for s in combinations(range(nrays), k):
            s = frozenset(s)
            if fan.contains_cone(s):
                continue
            if all(fan.contains_cone(s - {i}) for i in s):
                out.append(s)
    return out


def rs_presentation(fan):
    _require(fan)
    g = gkm_from_fan(fan)
    images = []
    for rho in range(len(fan.rays)):
        vals = {}
        for lab, cone in zip(fan.labels(), fan.max_cones):
            if rho in cone:
                vals[lab] = LaurentPoly.monomial(_duals(fan, cone)[rho])
            else:
                vals[lab] = LaurentPoly.one(fan.rank)
        images.append(PiecewiseClass(vals, g.vertices))
    return RSPresentation(fan, g, images, minimal_nonfaces(fan))


def relation_product(rs, s):
    one = LaurentPoly.one(rs.fan.rank)
    vals = {}
    for x in rs.graph.vertices:
        p = one
        for i in sorted(s):
            p = p * (rs.images[i][x] - one)
        vals[x] = p
    return PiecewiseClass(vals, rs.graph.vertices)


def character_class(g, m):
    mono = LaurentPoly.monomial(m)
    return PiecewiseClass({x: mono for x in g.vertices}, g.vertices)


def window_surjectivity(rs, B, slack=1):
    """Is every window-B member an integer combination of monomial images?

    Monomial images are taken with values in the larger window B + slack,
    because a member supported in window B can need monomials whose
    individual values leave the window and cancel (P3 at B = 2 needs one
    extra layer).  The Z-span is put in echelon form with the outer
    coordinates first; rows with zero outer part span its intersection with
    the window.  That intersection is compared with the window member
    lattice by rank and saturation.

    Returns (span rank inside the window, member rank, equal).
    """
    fan = rs.fan
    g = rs.graph
    nv = len(g.vertices)
    inner = window_monomials(fan.rank, B)
    outer = [m for m in window_monomials(fan.rank, B + slack) if max(map(abs, m)) > B]
    order = {m: i for i, m in enumerate(outer + inner)}
    nout = len(outer) * nv
    cones = list(zip(fan.labels(), fan.max_cones))
    duals = [_duals(fan, c) for _, c in cones]
    bounds = [(B + slack) * sum(abs(x) for x in r) for r in fan.rays]
    ech = intlin.SparseZEchelon()
    top = B + slack
    for a in product(*[range(-b, b + 1) for b in bounds]):
        row = {}
        for (lab, cone), d in zip(cones, duals):
            chi = tuple(sum(a[i] * d[i][k] for i in cone) for k in range(fan.rank))
            if any(abs(c) > top for c in chi):
                row = None
                break
            # monomial-major columns, so the outer window comes first
            row[order[chi] * nv + g.index[lab]] = 1
        if row is not None:
            ech.add(row)
    ncols = len(inner) * nv
    span = []
    for col, r in sorted(ech.pivots.items()):
        if col >= nout:
            v = [0] * ncols
            for j, c in r.items():
                v[j - nout] = c
            span.append(v)
    w = Window(g, inner)
    member_rank = w.solution_rank(w.membership_rows())
    equal = len(span) == member_rank and intlin.is_saturated(span, ncols)
    return len(span), member_rank, equal


def verify_rs(fan, B=3):
    rs = rs_presentation(fan)
    g = rs.graph
    checks = []
    for i, f in enumerate(rs.images):
        v = is_member(g, f)
        checks.append({"name": "image x%d is a member" % (i + 1), "pass": bool(v),
                       "witness": None if v else v.to_json()})
    for s in rs.relation_subsets:
        p = relation_product(rs, s)
        zero = all(val.is_zero() for _, val in p.items())
        checks.append({"name": "relation %s vanishes" % "".join("(x%d-1)" % (i + 1)
                                                              for i in sorted(s)),
                       "pass": zero, "witness": None if zero else p.to_json()})
    for m in intlin.identity(fan.rank):
        lhs = character_class(g, m)
        a = rs.character_exponents(m)
        rhs = rs.monomial(a)
        checks.append({"name": "chi^%s acts as x^%s" % (list(m), a), "pass": lhs == rhs,
                       "witness": None})
    span_rank, member_rank, sat = window_surjectivity(rs, B)
    checks.append({"name": "window surjectivity at B=%d" % B, "pass": sat,
                   "witness": {"span_rank": span_rank, "member_rank": member_rank}})
    return {"fan": fan.name, "window": B, "checks": checks,
            "pass": all(c["pass"] for c in checks)}
