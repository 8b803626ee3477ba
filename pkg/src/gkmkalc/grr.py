"""Truncated Riemann-Roch: Chern characters, tau, and transport of congruences to Chow.

Degree d components are homogeneous polynomials with Fraction coefficients
in symbols t_1..t_r, one per basis character; the character chi has linear
form sum chi_k t_k.
"""

from fractions import Fraction
from math import factorial

from .charlat import primitive_part


class TruncatedSeries:
    """Element of Q[t_1..t_r] / (degree > N), stored as {exponent: Fraction}."""

    __slots__ = ("rank", "N", "terms")

    def __init__(self, rank, N, terms=None):
        self.rank = rank
        self.N = N
        d = {}
        for e, c in (terms or {}).items():
            if sum(e) <= N and c:
                d[tuple(e)] = d.get(tuple(e), 0) + Fraction(c)
        self.terms = {e: c for e, c in d.items() if c}

    @classmethod
    def zero(cls, rank, N):
        return cls(rank, N)

    @classmethod
    def one(cls, rank, N):
        return cls(rank, N, {(0,) * rank: 1})

    @classmethod
    def linear(cls, chi, N, scale=1):
        return cls(len(chi), N, {tuple(int(i == k) for i in range(len(chi))): Fraction(scale) * c
                                 for k, c in enumerate(chi) if c})

    def component(self, d):
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def _same(self, other):
        if self.rank != other.rank or self.N != other.N:
            raise ValueError("series with different rank or degree bound")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return TruncatedSeries(self.rank, self.N, t)

    def __neg__(self):
        return TruncatedSeries(self.rank, self.N, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.rank, self.N, {e: c * other for e, c in self.terms.items()})
        self._same(other)
        t = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > self.N:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return TruncatedSeries(self.rank, self.N, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = TruncatedSeries.one(self.rank, self.N)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.rank == other.rank and \
            self.N == other.N and self.terms == other.terms

    def __repr__(self):
        return "TruncatedSeries(%s, N=%d)" % (self.pretty(), self.N)

    def pretty(self):
        if not self.terms:
            return "0"
        names = ["t"] if self.rank == 1 else ["t%d" % (i + 1) for i in range(self.rank)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), [-x for x in e])):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else "%s^%d" % (n, k) for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {"rank": self.rank, "N": self.N,
                "terms": [{"exp": list(e), "coeff": str(self.terms[e])} for e in sorted(self.terms)]}


def tau_one_minus(chi, n, N):
    """tau(1 - chi^n) = sum_{i=1}^N (-1)^{i+1} (n chi)^i / (i+1)!, chi^n linearized to n chi."""
    if n < 1:
        raise ValueError("n must be positive")
    x = TruncatedSeries.linear(chi, N, n)
    out = TruncatedSeries.zero(len(chi), N)
    for i in range(1, N + 1):
        out = out + (x ** i) * Fraction((-1) ** (i + 1), factorial(i + 1))
    return out


def _exp_linear(chi, N):
    x = TruncatedSeries.linear(chi, N)
    out = TruncatedSeries.one(len(chi), N)
    for k in range(1, N + 1):
        out = out + (x ** k) * Fraction(1, factorial(k))
    return out


def ch_truncated(f, N):
    """chi^a -> exp(sum a_k t_k), cut at degree N."""
    out = TruncatedSeries.zero(f.rank, N)
    for e, c in f.items():
        out = out + _exp_linear(e, N) * c
    return out


class ChowGKMGraph:
    """Congruences f_u - f_v = 0 mod (linear form)^power, with the K-theory multiplicity kept."""

    def __init__(self, rank, vertices, edges, name=None):
        self.rank = rank
        self.vertices = list(vertices)
        self.edges = list(edges)   # (u, v, chi, power, multiplicity, source)
        self.name = name

    def to_json(self):
        return {"rank": self.rank, "vertices": self.vertices,
                "edges": [{"u": u, "v": v, "chi": list(chi), "power": p, "multiplicity": m,
                           "source": s} for u, v, chi, p, m, s in self.edges]}


def k_to_chow(g):
    """Each K-constraint (chi, n) becomes the linear congruence mod chi.

    The leading form of ch(1 - chi^n) is -n chi, so over Q the exponent n
    only survives as a recorded multiplicity.  Cells contribute their
    constraints one by one, so the (1 - chi^2) clause of a P2 cell is also
    linear.
    """
    edges = []
    for c in g.constraints():
        chi, d = primitive_part(c.chi)
        src = c.source[0] if isinstance(c.source, tuple) else c.source
        edges.append((c.u, c.v, chi, 1, c.n * d, src))
    return ChowGKMGraph(g.rank, g.vertices, edges, name=(g.name or "gkm") + "|Chow")


def _restrict_to_hyperplane(poly, chi):
    """Substitute t_i = -(sum_{j != i} chi_j t_j) / chi_i; zero iff chi divides poly."""
    i = next(k for k, c in enumerate(chi) if c)
    r = len(chi)
    # powers of the substituted linear form, built lazily
    lin = {tuple(int(k == j) for k in range(r)): Fraction(-chi[j], chi[i])
           for j in range(r) if j != i and chi[j]}
    powers = [{(0,) * r: Fraction(1)}]
    out = {}
    for e, c in poly.items():
        k = e[i]
        while len(powers) <= k:
            prev = powers[-1]
            nxt = {}
            for a, x in prev.items():
                for b, y in lin.items():
                    m = tuple(p + q for p, q in zip(a, b))
                    nxt[m] = nxt.get(m, 0) + x * y
            powers.append(nxt)
        base = tuple(0 if j == i else e[j] for j in range(r))
        for a, x in powers[k].items():
            m = tuple(p + q for p, q in zip(base, a))
            out[m] = out.get(m, 0) + c * x
    return {m: c for m, c in out.items() if c}


def divisible_by_power(poly, chi, p):
    """Is the homogeneous polynomial divisible by (chi . t)^p over Q?"""
    cur = dict(poly)
    for _ in range(p):
        if _restrict_to_hyperplane(cur, chi):
            return False
        if not cur:
            return True
        cur = _divide_linear(cur, chi)
    return True


def _divide_linear(poly, chi):
    """Exact quotient by the linear form, assuming divisibility (division in the t_i variable)."""
    i = next(k for k, c in enumerate(chi) if c)
    r = len(chi)
    rest = dict(poly)
    q = {}
    while rest:
        e = max(rest, key=lambda e: (e[i], e))
        c = rest[e]
        if e[i] == 0:
            raise ArithmeticError("linear form does not divide")
        m = tuple(x - int(k == i) for k, x in enumerate(e))
        a = c / chi[i]
        q[m] = q.get(m, 0) + a
        for j in range(r):
            if chi[j]:
                t = tuple(x + int(k == j) for k, x in enumerate(m))
                rest[t] = rest.get(t, 0) - a * chi[j]
                if not rest[t]:
                    del rest[t]
    return q


def verify_transport(g, f, N=4):
    """Check ch_N(f_u) - ch_N(f_v) against every Chow congruence, degree by degree."""
    cg = k_to_chow(g)
    ch = {x: ch_truncated(f[x], N) for x in g.vertices}
    failures = []
    for u, v, chi, p, m, src in cg.edges:
        diff = ch[u] - ch[v]
        for d in range(N + 1):
            comp = diff.component(d)
            if comp and not divisible_by_power(comp, chi, p):
                failures.append({"u": u, "v": v, "chi": list(chi), "power": p, "degree": d})
    return {"graph": g.name, "N": N, "constraints": len(cg.edges),
            "failures": failures, "pass": not failures}
