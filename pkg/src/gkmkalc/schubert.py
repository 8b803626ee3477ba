"""Bruhat graphs of flag varieties, Demazure operators and K-theoretic Schubert classes.

Conventions.  The default Demazure operator is

    D_i f = (f - e^{-a_i} s_i f) / (1 - e^{-a_i}),

and the opposite one swaps a_i for -a_i.  On the Bruhat graph the matching
GKM operator is

    (T_i f)(v) = (f(v) - e^{-v a_i} f(v s_i)) / (1 - e^{-v a_i}),

started from the point class at w0 with value prod_{b > 0} (1 - e^{b}).
With these choices O_e is the constant class 1 (for the opposite convention
every sign flips).
"""

from concurrent.futures import ThreadPoolExecutor

from . import intlin
from .charlat import (LaurentPoly, apply_lattice_map, exact_divide, primitive_part,
                      window_monomials)
from .gkm import GKMError, GKMGraph, PiecewiseClass, Window, is_member, thread_count
from .rootdata import RootDatum, _restrict, generate_weyl, mat_vec

CONVENTIONS = ("default", "opposite")


def _sign(convention):
    if convention not in CONVENTIONS:
        raise ValueError("unknown Demazure convention %r" % (convention,))
    return -1 if convention == "default" else 1


def flag_bruhat_gkm(datum, W=None):
    """Vertices W; an edge (w, s_b w) for every positive root b, with modulus 1 - e^b.

    On a weight lattice b need not be primitive; the label is then its
    primitive part with the multiplicity as exponent.
    """
    if W is None:
        W = generate_weyl(datum)
    order = {w.label: i for i, w in enumerate(W)}
    refl = [(b, W.reflection_of_root(b)) for b in datum.positive_roots()]
    edges = []
    seen = set()
    for w in W:
        for b, s in refl:
            v = W.mul(s, w)
            u, x = sorted((w.label, v.label), key=order.__getitem__)
            if (u, x) not in seen:
                seen.add((u, x))
                chi, n = primitive_part(b)
                edges.append((u, x, chi, n))
    return GKMGraph(datum.rank, [w.label for w in W], edges, name="G/B(%s)" % (datum.name or ""))


def demazure(datum, f, i, convention="default"):
    sg = _sign(convention)
    a = tuple(sg * x for x in datum.simple_roots[i])
    sf = apply_lattice_map(datum.reflections[i], f)
    num = f - LaurentPoly.monomial(a) * sf
    q = exact_divide(num, LaurentPoly.one_minus(a))
    if q is None:
        raise ArithmeticError("Demazure division is not exact (convention wiring)")
    return q


class SchubertClass:
    def __init__(self, w, restrictions):
        self.w = w
        self.restrictions = restrictions

    def __repr__(self):
        return "O_%s" % self.w.label

    def __getitem__(self, x):
        return self.restrictions[x]


def _total_order(W):
    return sorted(W, key=lambda w: (w.length, w.word))


def _point_value(datum, sg):
    p = LaurentPoly.one(datum.rank)
    for b in datum.positive_roots():
        p = p * LaurentPoly.one_minus(tuple(-sg * x for x in b))
    return p


def schubert_basis(datum, W=None, convention="default", normalization="basis"):
    """{label: SchubertClass}, built downward from the point class at w0.

    normalization="dual" returns the boundary ideal sheaf classes
    sum_{v >= w} (-1)^{l(v) - l(w)} O_v instead.
    """
    sg = _sign(convention)
    if W is None:
        W = generate_weyl(datum)
    g = flag_bruhat_gkm(datum, W)
    r = datum.rank
    zero = LaurentPoly.zero(r)
    w0 = W.longest()
    pt = _point_value(datum, sg)
    vals = {x.label: (pt if x == w0 else zero) for x in W}
    classes = {w0.label: SchubertClass(w0, PiecewiseClass(vals, g.vertices))}
    queue = [w0]
    while queue:
        w = queue.pop(0)
        f = classes[w.label].restrictions
        for i in range(len(datum.simple_roots)):
            ws = W.mul(w, W.simple(i))
            if ws.length > w.length or ws.label in classes:
                continue
            new = {}
            for v in W:
                vs = W.mul(v, W.simple(i))
                a = tuple(sg * x for x in mat_vec(v.matrix, datum.simple_roots[i]))
                num = f[v.label] - LaurentPoly.monomial(a) * f[vs.label]
                q = exact_divide(num, LaurentPoly.one_minus(a))
                if q is None:
                    raise ArithmeticError("GKM Demazure division is not exact at %s" % v.label)
                new[v.label] = q
            classes[ws.label] = SchubertClass(ws, PiecewiseClass(new, g.vertices))
            queue.append(ws)
    _check_triangular(W, classes)
    if normalization == "dual":
        out = {}
        for w in W:
            acc = PiecewiseClass({x: zero for x in g.vertices}, g.vertices)
            for v in W:
                if W.bruhat_leq(w, v):
                    c = classes[v.label].restrictions
                    acc = acc + c if (v.length - w.length) % 2 == 0 else acc - c
            out[w.label] = SchubertClass(w, acc)
        return out
    if normalization != "basis":
        raise ValueError("unknown normalization %r" % (normalization,))
    return classes


def _check_triangular(W, classes):
    for w in W:
        f = classes[w.label].restrictions
        if f[w.label].is_zero():
            raise GKMError("zero diagonal entry at %s" % w.label)
        for v in W:
            if not f[v.label].is_zero() and not W.bruhat_leq(w, v):
                raise GKMError("O_%s does not vanish at %s" % (w.label, v.label))


def restriction_matrix(W, basis):
    """Rows w, columns v in the Bruhat-compatible total order."""
    ws = _total_order(W)
    return [[basis[w.label][v.label] for v in ws] for w in ws]


def expand(W, basis, p):
    """Coefficients c_w with p = sum c_w O_w, by back substitution on the restrictions."""
    coeffs = {}
    for w in _total_order(W):
        rest = p[w.label]
        for u, c in coeffs.items():
            if not c.is_zero():
                rest = rest - c * basis[u][w.label]
        diag = basis[w.label][w.label]
        c = exact_divide(rest, diag)
        if c is None:
            raise GKMError("class is not in the R(T)-span of the Schubert basis (at %s)" % w.label)
        coeffs[w.label] = c
    return coeffs


def recombine(W, basis, coeffs, vertices):
    rank = basis[W.identity().label][W.identity().label].rank
    vals = {}
    for v in vertices:
        acc = LaurentPoly.zero(rank)
        for u, c in coeffs.items():
            if not c.is_zero():
                acc = acc + c * basis[u][v]
        vals[v] = acc
    return PiecewiseClass(vals, vertices)


def structure_constants(datum, u, v, W=None, basis=None):
    """{w: c^w_{uv}} with O_u O_v = sum_w c^w_{uv} O_w, re-multiplied before returning."""
    if W is None:
        W = generate_weyl(datum)
    if basis is None:
        basis = schubert_basis(datum, W)
    prod = basis[u].restrictions * basis[v].restrictions
    coeffs = expand(W, basis, prod)
    if recombine(W, basis, coeffs, prod.vertices) != prod:
        raise GKMError("structure constants for (%s, %s) do not re-multiply" % (u, v))
    return {w: c for w, c in coeffs.items() if not c.is_zero()}


def structure_table(datum, W=None, basis=None):
    if W is None:
        W = generate_weyl(datum)
    if basis is None:
        basis = schubert_basis(datum, W)
    pairs = [(u.label, v.label) for u in _total_order(W) for v in _total_order(W)]

    def one(p):
        return p, structure_constants(datum, p[0], p[1], W, basis)

    n = thread_count()
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            return dict(ex.map(one, pairs))
    return dict(map(one, pairs))


def window_basis_rank(datum, B, W=None, basis=None):
    """(rank, expected, saturated, all members) for the classes m O_w with m in the box [-B, B]^r."""
    if W is None:
        W = generate_weyl(datum)
    if basis is None:
        basis = schubert_basis(datum, W)
    g = flag_bruhat_gkm(datum, W)
    box = window_monomials(datum.rank, B)
    cls = []
    for w in _total_order(W):
        f = basis[w.label].restrictions
        for m in box:
            mono = LaurentPoly.monomial(m)
            cls.append(PiecewiseClass({x: mono * f[x] for x in g.vertices}, g.vertices))
    support = sorted({e for f in cls for _, p in f.items() for e in p.support()})
    win = Window(g, support)
    vecs = [win.to_vector(f) for f in cls]
    rk = intlin.rank(vecs, win.ncols)
    sat = rk == len(vecs) and intlin.is_saturated(vecs, win.ncols)
    members = all(is_member(g, basis[w.label].restrictions) for w in W)
    return rk, len(W) * len(box), sat, members


# ---------------------------------------------------------------- symmetric varieties

def restricted_datum(mrd):
    rr = mrd.restricted
    return RootDatum([list(b) for b in rr.simple], rr.cartan, name="res(%s)" % (mrd.datum.name or ""))


def symmetric_schubert(mrd, convention="default"):
    """Flag Schubert classes of the restricted root system, lifted to Y and
    translated to every block of X.  Membership in K_T(X) is reported, not
    assumed.
    """
    from .wonderful import _blocks, build_gkm_X, build_gkm_Y, translate_class
    rd = restricted_datum(mrd)
    RW = generate_weyl(rd)
    basis = schubert_basis(rd, RW, convention=convention)
    E = mrd.split
    lift = [[E[i][k] for i in range(len(E))] for k in range(mrd.rank)]
    gy, gx = build_gkm_Y(mrd), build_gkm_X(mrd)
    to_flag = {}
    for y in mrd.y_vertices():
        m = _restrict(y.matrix, E)
        to_flag[y.label] = RW.by_matrix[m].label
    ylifted = {}
    for w, sc in basis.items():
        vals = {y: apply_lattice_map(lift, sc[to_flag[y]]) for y in gy.vertices}
        ylifted[w] = PiecewiseClass(vals, gy.vertices)
    out = []
    for blk, block in _blocks(mrd):
        for w, f in ylifted.items():
            h = translate_class(mrd, gx, blk, block, f)
            out.append({"block": blk.label, "schubert": w, "class": h,
                        "y_member": bool(is_member(gy, f)),
                        "x_member": bool(is_member(gx, h))})
    return out


def symmetric_schubert_report(mrd):
    rows = symmetric_schubert(mrd)
    return {"instance": mrd.datum.name, "classes": len(rows),
            "entries": [{k: r[k] for k in ("block", "schubert", "y_member", "x_member")}
                        for r in rows],
            "all_y_members": all(r["y_member"] for r in rows),
            "all_x_members": all(r["x_member"] for r in rows)}
