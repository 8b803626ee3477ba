"""GKM graphs, piecewise classes, membership and invariants on exponent windows.

A GKM graph carries fixed points as vertices, T-stable curves as edges
(u, v, chi, n) meaning f_u - f_v ≡ 0 mod (1 - chi^n), and surface cells
whose congruences depend on the kind of surface (P2, P1xP1 or Fn).
"""

import json
import os
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from . import intlin
from .charlat import (LaurentPoly, character, divides_one_minus, is_primitive,
                      neg, primitive_part, reduce_mod, residue_classifier,
                      window_monomials)


class GKMError(ValueError):
    pass


Edge = namedtuple("Edge", "u v chi n")
Constraint = namedtuple("Constraint", "u v chi n source")


class SurfaceCell(namedtuple("SurfaceCell", "kind n verts chi")):
    __slots__ = ()

    def constraints(self):
        k, n, vs, chi = self.kind, self.n, self.verts, self.chi
        if k == "P2":
            x, y, z = vs
            pairs = [(x, y, 1), (x, z, 1), (y, z, 2)]
        elif k == "P1xP1":
            x, y, z, w = vs
            pairs = [(x, y, 1), (y, z, 1), (z, w, 1), (x, w, 1)]
        elif k == "Fn":
            x, y, z, w = vs
            pairs = [(x, y, 1), (z, w, 1), (y, z, 2 * n), (x, w, n)]
        else:
            raise GKMError("unknown cell kind %r" % (k,))
        return [Constraint(a, b, chi, m, ("cell", self)) for a, b, m in pairs]


def make_cell(kind, verts, chi, n=None):
    verts = tuple(verts)
    if kind not in ("P2", "P1xP1", "Fn"):
        raise GKMError("unknown cell kind %r" % (kind,))
    if len(verts) != (3 if kind == "P2" else 4):
        raise GKMError("%s cell needs %d vertices" % (kind, 3 if kind == "P2" else 4))
    if kind == "Fn":
        if n is None or int(n) < 1:
            raise GKMError("Fn cell needs n >= 1")
        n = int(n)
    else:
        n = None
    return SurfaceCell(kind, n, verts, character(chi))


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


class GKMGraph:
    def __init__(self, rank, vertices, edges=(), cells=(), autos=(), name=None):
        self.rank = int(rank)
        self.vertices = list(vertices)
        self.index = {x: i for i, x in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise GKMError("duplicate vertex labels")
        es = []
        seen = set()
        for e in edges:
            e = Edge(e[0], e[1], character(e[2]), int(e[3]))
            if e.u == e.v:
                raise GKMError("edge endpoints must be distinct: %r" % (e,))
            for x in (e.u, e.v):
                if x not in self.index:
                    raise GKMError("edge endpoint %r is not a vertex" % (x,))
            if len(e.chi) != self.rank or not is_primitive(e.chi):
                raise GKMError("edge label %r is not a primitive character" % (e.chi,))
            if e.n < 1:
                raise GKMError("edge exponent must be positive: %r" % (e,))
            key = (_pair(e.u, e.v), _line(e.chi), e.n)
            if key in seen:
                raise GKMError("duplicate edge %r" % (e,))
            seen.add(key)
            es.append(e)
        self.edges = es
        self.cells = list(cells)
        for c in self.cells:
            for x in c.verts:
                if x not in self.index:
                    raise GKMError("cell vertex %r is not a vertex" % (x,))
            if len(c.chi) != self.rank or not is_primitive(c.chi):
                raise GKMError("cell label %r is not a primitive character" % (c.chi,))
        self.autos = [(dict(p), [list(r) for r in A]) for p, A in autos]
        self.name = name

    def __repr__(self):
        return "GKMGraph(%s, %d vertices, %d edges, %d cells)" % (
            self.name or "?", len(self.vertices), len(self.edges), len(self.cells))

    def constraints(self):
        out = [Constraint(e.u, e.v, e.chi, e.n, ("edge", e)) for e in self.edges]
        for c in self.cells:
            out.extend(c.constraints())
        return out

    def edge_set(self):
        """Edges as a set of (unordered pair, label up to sign, n)."""
        return {(_pair(e.u, e.v), _line(e.chi), e.n) for e in self.edges}

    def with_edges(self, edges, name=None):
        return GKMGraph(self.rank, self.vertices, edges, self.cells, self.autos,
                        name or self.name)

    # serialization
    def to_json(self):
        return {
            "rank": self.rank,
            "vertices": list(self.vertices),
            "edges": [{"u": e.u, "v": e.v, "chi": list(e.chi), "n": e.n} for e in self.edges],
            "cells": [{"kind": c.kind, "n": c.n if c.n is not None else 1,
                       "verts": list(c.verts), "chi": list(c.chi)} for c in self.cells],
            "autos": [{"perm": [p[x] for x in self.vertices], "mat": A} for p, A in self.autos],
        }

    @classmethod
    def from_json(cls, obj, name=None):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            rank = obj["rank"]
            verts = [str(x) for x in obj["vertices"]]
            edges = [(str(e["u"]), str(e["v"]), e["chi"], e.get("n", 1))
                     for e in obj.get("edges", [])]
            cells = [make_cell(c["kind"], [str(x) for x in c["verts"]], c["chi"], c.get("n"))
                     for c in obj.get("cells", [])]
            autos = []
            for a in obj.get("autos", []):
                perm = [str(x) for x in a["perm"]]
                autos.append((dict(zip(verts, perm)), a["mat"]))
        except (KeyError, TypeError) as exc:
            raise GKMError("malformed GKM JSON: missing or bad field %s" % exc) from exc
        return cls(rank, verts, edges, cells, autos, name=name or obj.get("name"))

    def to_dot(self):
        lines = ["graph %s {" % json.dumps(self.name or "gkm")]
        for x in self.vertices:
            lines.append("  %s;" % json.dumps(x))
        for e in self.edges:
            lab = "(%s)^%d" % (",".join(map(str, e.chi)), e.n) if e.n != 1 else \
                "(%s)" % ",".join(map(str, e.chi))
            lines.append("  %s -- %s [label=%s];" % (json.dumps(e.u), json.dumps(e.v),
                                                   json.dumps(lab)))
        for i, c in enumerate(self.cells):
            lines.append("  // cell %d: %s%s on %s, chi=%s" % (
                i, c.kind, "" if c.n is None else "(n=%d)" % c.n, ",".join(c.verts), list(c.chi)))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _line(chi):
    """Representative of chi up to sign."""
    chi = character(chi)
    return max(chi, neg(chi))


def normalize_label(chi, n=1):
    """(1 - chi^n) with chi possibly non-primitive -> (primitive chi, n)."""
    chi0, d = primitive_part(chi)
    return chi0, n * d


# ---------------------------------------------------------------- classes

class PiecewiseClass:
    """A Laurent polynomial at every vertex of a GKM graph."""

    __slots__ = ("vertices", "_vals")

    def __init__(self, values, vertices=None):
        if vertices is None:
            vertices = list(values)
        self.vertices = tuple(vertices)
        vals = dict(values)
        if set(vals) != set(self.vertices):
            raise GKMError("class is not defined on exactly the graph's vertices")
        self._vals = vals

    def __getitem__(self, x):
        return self._vals[x]

    @property
    def values(self):
        return dict(self._vals)

    def items(self):
        return [(x, self._vals[x]) for x in self.vertices]

    def __eq__(self, other):
        return isinstance(other, PiecewiseClass) and self.values == other.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items(), key=lambda kv: kv[0])))

    def __repr__(self):
        return "PiecewiseClass(%s)" % ", ".join("%s: %s" % (x, f.pretty()) for x, f in self.items())

    def __add__(self, other):
        return add(None, self, other)

    def __sub__(self, other):
        return add(None, self, scalar(-1, other))

    def __mul__(self, other):
        return mul(None, self, other)

    def to_json(self):
        return {"values": {x: f.to_json() for x, f in self.items()}}

    @classmethod
    def from_json(cls, obj, g):
        vals = obj["values"] if "values" in obj else obj
        out = {}
        for x in g.vertices:
            if x not in vals:
                raise GKMError("class has no value at vertex %r" % (x,))
            out[x] = LaurentPoly.from_json(vals[x], g.rank)
        extra = set(vals) - set(g.vertices)
        if extra:
            raise GKMError("class has values at unknown vertices %s" % sorted(extra))
        return cls(out, g.vertices)


def make_class(g, values):
    """Class from a list (in vertex order) or a dict of LaurentPolys or ints."""
    if not isinstance(values, dict):
        values = dict(zip(g.vertices, values))
    vals = {}
    for x, f in values.items():
        if isinstance(f, int):
            f = LaurentPoly.constant(f, g.rank)
        vals[x] = f
    return PiecewiseClass(vals, g.vertices)


def constant_class(g, c=1):
    return make_class(g, [c] * len(g.vertices))


def _same(f1, f2):
    if f1.vertices != f2.vertices and set(f1.vertices) != set(f2.vertices):
        raise GKMError("classes live on different vertex sets")


def add(g, f1, f2):
    _same(f1, f2)
    return PiecewiseClass({x: f1[x] + f2[x] for x in f1.vertices}, f1.vertices)


def mul(g, f1, f2):
    _same(f1, f2)
    return PiecewiseClass({x: f1[x] * f2[x] for x in f1.vertices}, f1.vertices)


def scalar(c, f):
    return PiecewiseClass({x: c * v for x, v in f.items()}, f.vertices)


# ---------------------------------------------------------------- membership

class Verdict:
    def __init__(self, ok, constraint=None, remainder=None):
        self.ok = ok
        self.constraint = constraint
        self.remainder = remainder

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "Verdict(member)"
        c = self.constraint
        return "Verdict(fails f_%s - f_%s mod (1 - %s^%d), remainder %s)" % (
            c.u, c.v, list(c.chi), c.n, self.remainder.pretty())

    def to_json(self):
        if self.ok:
            return {"member": True}
        c = self.constraint
        return {"member": False,
                "failed": {"u": c.u, "v": c.v, "chi": list(c.chi), "n": c.n,
                           "source": c.source[0]},
                "remainder": self.remainder.to_json()}


def thread_count():
    try:
        return max(1, int(os.environ.get("GKMKALC_THREADS", "1")))
    except ValueError:
        return 1


def _check_constraint(f, c):
    d = f[c.u] - f[c.v]
    if divides_one_minus(d, c.chi, c.n):
        return None
    return reduce_mod(d, c.chi, c.n)


def is_member(g, f):
    if set(f.vertices) != set(g.vertices):
        raise GKMError("class and graph have different vertex sets")
    cons = g.constraints()
    threads = thread_count()
    if threads > 1 and len(cons) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rems = list(ex.map(lambda c: _check_constraint(f, c), cons))
    else:
        rems = [_check_constraint(f, c) for c in cons]
    for c, r in zip(cons, rems):
        if r is not None:
            return Verdict(False, c, r)
    return Verdict(True)


# ---------------------------------------------------------------- group actions

def _apply_mat(A, chi):
    return intlin.matvec(A, chi)


def automorphism_defect(g, perm, A, strict=True):
    """None if (perm, A) is an automorphism of g, else a description of the first failure.

    strict: edges must map to edges with the same exponent and label ±A chi.
    Otherwise only the vertex pairs and the label lines are compared, which is
    the weaker symmetry used for presentations with trivial action on R(T).
    """
    if set(perm) != set(g.vertices) or set(perm.values()) != set(g.vertices):
        return "permutation is not a bijection of the vertex set"
    if strict:
        target = g.edge_set()
        for e in g.edges:
            img = (_pair(perm[e.u], perm[e.v]), _line(_apply_mat(A, e.chi)), e.n)
            if img not in target:
                return "edge %s-%s (chi=%s, n=%d) has no image" % (e.u, e.v, list(e.chi), e.n)
        cells = {(c.kind, c.n, frozenset(c.verts), _line(c.chi)) for c in g.cells}
        for c in g.cells:
            img = (c.kind, c.n, frozenset(perm[x] for x in c.verts), _line(_apply_mat(A, c.chi)))
            if img not in cells:
                return "cell %s on %s has no image" % (c.kind, ",".join(c.verts))
    else:
        target = {(_pair(e.u, e.v), _line(e.chi)) for e in g.edges}
        for e in g.edges:
            img = (_pair(perm[e.u], perm[e.v]), _line(_apply_mat(A, e.chi)))
            if img not in target:
                return "edge %s-%s (chi=%s) has no image" % (e.u, e.v, list(e.chi))
    return None


def act(g, perm, A, f, strict=True):
    """(act f)(perm(x)) = A . f(x)."""
    bad = automorphism_defect(g, perm, A, strict=strict)
    if bad:
        raise GKMError("not an automorphism: " + bad)
    from .charlat import apply_lattice_map
    vals = {perm[x]: apply_lattice_map(A, f[x]) for x in g.vertices}
    return PiecewiseClass(vals, g.vertices)


# ---------------------------------------------------------------- window algebra

def window_closure(monos, mats):
    """Smallest superset of monos stable under all matrices (finite groups only)."""
    out = set(monos)
    frontier = list(out)
    while frontier:
        new = []
        for m in frontier:
            for A in mats:
                v = intlin.matvec(A, m)
                if v not in out:
                    out.add(v)
                    new.append(v)
        frontier = new
        if len(out) > 200000:
            raise GKMError("window closure does not terminate (group not finite?)")
    return sorted(out)


class Window:
    """Unknowns are coefficients c[x, m] for vertices x and window monomials m."""

    def __init__(self, g, monos):
        self.g = g
        self.monos = list(monos)
        self.mindex = {m: i for i, m in enumerate(self.monos)}
        self.nv = len(g.vertices)
        self.nm = len(self.monos)
        self.ncols = self.nv * self.nm

    def col(self, x, m):
        return self.g.index[x] * self.nm + self.mindex[m]

    def membership_rows(self, constraints=None):
        rows = []
        cons = self.g.constraints() if constraints is None else constraints
        for c in cons:
            key = residue_classifier(c.chi, c.n)
            classes = {}
            for m in self.monos:
                classes.setdefault(key(m), []).append(m)
            for ms in classes.values():
                row = {}
                for m in ms:
                    row[self.col(c.u, m)] = row.get(self.col(c.u, m), 0) + 1
                    row[self.col(c.v, m)] = row.get(self.col(c.v, m), 0) - 1
                rows.append(row)
        return rows

    def invariance_rows(self, group):
        rows = []
        for perm, A in group:
            for x in self.g.vertices:
                for m in self.monos:
                    am = intlin.matvec(A, m)
                    if am not in self.mindex:
                        raise GKMError("window is not stable under the group")
                    a, b = self.col(perm[x], am), self.col(x, m)
                    if a != b:
                        rows.append({a: 1, b: -1})
        return rows

    def dense(self, rows):
        out = []
        for r in rows:
            v = [0] * self.ncols
            for j, c in r.items():
                v[j] += c
            if any(v):
                out.append(v)
        return out

    def rank_of(self, rows):
        return intlin.rank(self.dense(rows), self.ncols)

    def solution_rank(self, rows):
        return self.ncols - self.rank_of(rows)

    def kernel(self, rows):
        return intlin.integer_kernel(self.dense(rows), self.ncols)

    def to_class(self, vec):
        vals = {}
        for x in self.g.vertices:
            i = self.g.index[x]
            terms = {m: vec[i * self.nm + k] for k, m in enumerate(self.monos)
                     if vec[i * self.nm + k]}
            vals[x] = LaurentPoly(terms, self.g.rank)
        return PiecewiseClass(vals, self.g.vertices)

    def to_vector(self, f):
        v = [0] * self.ncols
        for x, p in f.items():
            for e, c in p.items():
                if e not in self.mindex:
                    raise GKMError("class is not supported in the window")
                v[self.col(x, e)] = c
        return v


def _group_window(g, group, B):
    base = window_monomials(g.rank, B)
    mats = [A for _, A in group]
    if not mats:
        return base
    return window_closure(base, mats)


def window_member_rank(g, B):
    w = Window(g, window_monomials(g.rank, B))
    return w.solution_rank(w.membership_rows())


def window_members(g, B):
    w = Window(g, window_monomials(g.rank, B))
    return [w.to_class(v) for v in w.kernel(w.membership_rows())]


def _validate_group(g, group, strict):
    for perm, A in group:
        bad = automorphism_defect(g, perm, A, strict=strict)
        if bad:
            raise GKMError("not an automorphism: " + bad)


def invariant_rank(g, group, B, strict=True):
    _validate_group(g, group, strict)
    w = Window(g, _group_window(g, group, B))
    return w.solution_rank(w.membership_rows() + w.invariance_rows(group))


def invariants_window(g, group, B, strict=True):
    """Saturated Z-basis of invariant member classes supported in the window.

    group: generators (perm dict, matrix).  The box [-B, B]^rank is closed
    under the matrices before solving.
    """
    _validate_group(g, group, strict)
    w = Window(g, _group_window(g, group, B))
    rows = w.membership_rows() + w.invariance_rows(group)
    return [w.to_class(v) for v in w.kernel(rows)]


def window_basis_check(g, basis, group, B):
    """Independent verification of an invariants_window output.

    Returns (all_invariant_members, saturated).  Saturation is checked with
    the Smith normal form of the basis matrix: its invariant factors are all
    one iff the Z-span is saturated.
    """
    w = Window(g, _group_window(g, group, B))
    ok = True
    for f in basis:
        if not is_member(g, f):
            ok = False
        for perm, A in group:
            if act(g, perm, A, f, strict=False) != f:
                ok = False
    vecs = [w.to_vector(f) for f in basis]
    sat = intlin.is_saturated(vecs, w.ncols) if vecs else True
    return ok, sat


# ---------------------------------------------------------------- quotients

def orbits(vertices, perms):
    parent = {x: x for x in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in vertices:
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for x in vertices:
        groups.setdefault(find(x), []).append(x)
    return {x: min(groups[find(x)]) for x in vertices}


def quotient_presentation(g, group, B=2, strict=True, check=True):
    """Presentation on vertex orbits with the induced congruences.

    Constraints inside an orbit are dropped, duplicates merged and a
    constraint implied by another on the same pair and line (n | n') is
    removed.  The quotient only sees the vertex permutations, so with
    check=True its window members are compared with the window classes of g
    that are constant on orbits (the permutation action with trivial action
    on R(T)).
    """
    _validate_group(g, group, strict)
    rep = orbits(g.vertices, [p for p, _ in group])
    verts = []
    for x in g.vertices:
        if rep[x] not in verts:
            verts.append(rep[x])
    cons = {}
    order = []
    for c in g.constraints():
        a, b = rep[c.u], rep[c.v]
        if a == b:
            continue
        key = (_pair(a, b), _line(c.chi))
        if key not in cons:
            cons[key] = set()
            order.append((key, a, b))
        cons[key].add(c.n)
    edges = []
    for key, a, b in order:
        ns = sorted(cons[key])
        keep = [n for n in ns if not any(m != n and m % n == 0 for m in ns)]
        for n in keep:
            edges.append((a, b, key[1], n))
    q = GKMGraph(g.rank, verts, edges, name=(g.name or "gkm") + "/G")
    if check:
        trivial = [(p, intlin.identity(g.rank)) for p, _ in group]
        r1 = invariant_rank(g, trivial, B, strict=False)
        r2 = window_member_rank(q, B)
        if r1 != r2:
            raise GKMError("quotient inconsistent: invariant window rank %d, "
                           "quotient window rank %d" % (r1, r2))
    return q


def equivalent_presentations(g1, g2, B=2):
    """Same vertex list and the same member classes supported in the window.

    Membership is a homogeneous integer linear condition, so the member
    lattice is the rational solution space intersected with Z^N and equality
    reduces to equality of the rational row spaces.  Members in a smaller
    window are members in the larger one, so checking B covers every B' <= B.
    """
    if list(g1.vertices) != list(g2.vertices) or g1.rank != g2.rank:
        return False
    monos = window_monomials(g1.rank, B)
    w1, w2 = Window(g1, monos), Window(g2, monos)
    k1 = w1.dense(w1.membership_rows())
    k2 = w2.dense(w2.membership_rows())
    r1, r2 = intlin.rank(k1, w1.ncols), intlin.rank(k2, w2.ncols)
    return r1 == r2 and intlin.rank(k1 + k2, w1.ncols) == r1
