"""Character lattices and exact Laurent polynomials over Z.

A character of a rank r torus is an exponent vector in Z^r, written as a
tuple.  A LaurentPoly is an immutable map exponent -> nonzero integer, i.e.
an element of R(T) = Z[M].  Every congruence f ≡ 0 mod (1 - chi^n) used in
the GKM descriptions is tested here by moving chi to a coordinate character
t and reducing t-exponents mod n.
"""

from functools import lru_cache
from math import gcd

from . import intlin


class CharacterLattice:
    __slots__ = ("rank",)

    def __init__(self, rank):
        if int(rank) < 1:
            raise ValueError("lattice rank must be positive")
        self.rank = int(rank)

    def __eq__(self, other):
        return isinstance(other, CharacterLattice) and other.rank == self.rank

    def __hash__(self):
        return hash(("M", self.rank))

    def __repr__(self):
        return "CharacterLattice(%d)" % self.rank

    def zero(self):
        return (0,) * self.rank

    def basis(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]


def character(v):
    return tuple(int(x) for x in v)


def primitive_part(chi):
    """(chi0, d) with chi = d * chi0 and chi0 primitive."""
    chi = character(chi)
    d = 0
    for x in chi:
        d = gcd(d, x)
    if d == 0:
        raise ValueError("zero character has no primitive part")
    return tuple(x // d for x in chi), d


def is_primitive(chi):
    d = 0
    for x in chi:
        d = gcd(d, x)
    return d == 1


def sign_normalize(chi):
    """Choose the sign of a character so that its last nonzero entry is positive."""
    chi = character(chi)
    for x in reversed(chi):
        if x:
            return chi if x > 0 else tuple(-y for y in chi)
    return chi


def neg(chi):
    return tuple(-x for x in chi)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def scale(k, a):
    return tuple(k * x for x in a)


class LaurentPoly:
    """Finitely supported map Z^r -> Z, viewed as an element of Z[M]."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, terms=None, rank=None):
        d = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = character(e)
                c = int(c)
                if c:
                    d[e] = d.get(e, 0) + c
        d = {e: c for e, c in d.items() if c}
        if rank is None:
            if not d:
                raise ValueError("rank needed for the zero polynomial")
            rank = len(next(iter(d)))
        for e in d:
            if len(e) != rank:
                raise ValueError("exponent %r has wrong length for rank %d" % (e, rank))
        self.rank = rank
        self._terms = tuple(sorted(d.items()))
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, rank):
        return cls({}, rank)

    @classmethod
    def one(cls, rank):
        return cls({(0,) * rank: 1}, rank)

    @classmethod
    def constant(cls, c, rank):
        return cls({(0,) * rank: c}, rank)

    @classmethod
    def monomial(cls, exp, coeff=1):
        exp = character(exp)
        return cls({exp: coeff}, len(exp))

    @classmethod
    def one_minus(cls, chi, n=1):
        """1 - chi^n."""
        chi = character(chi)
        r = len(chi)
        return cls({(0,) * r: 1, scale(n, chi): -1}, r)

    # access
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def coeff(self, exp):
        return dict(self._terms).get(character(exp), 0)

    def constant_term(self):
        return self.coeff((0,) * self.rank)

    def coeff_sum(self):
        return sum(c for _, c in self._terms)

    def support(self):
        return [e for e, _ in self._terms]

    def max_abs_exponent(self):
        return max((abs(x) for e, _ in self._terms for x in e), default=0)

    # ring structure
    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.rank)
        if other.rank != self.rank:
            raise ValueError("lattice mismatch: rank %d vs %d" % (self.rank, other.rank))
        return other

    def __add__(self, other):
        other = self._check(other)
        d = dict(self._terms)
        for e, c in other._terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(d, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms}, self.rank)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        d = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly(d, self.rank)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._terms) == 1 and abs(self._terms[0][1]) == 1:
                e, c = self._terms[0]
                return LaurentPoly.monomial(scale(k, e), c ** abs(k))
            raise ValueError("only unit monomials have negative powers")
        out = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.rank)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self._terms))
        return self._hash

    def __repr__(self):
        return "LaurentPoly(%s)" % self.pretty()

    def pretty(self, names=None):
        if not self._terms:
            return "0"
        if names is None:
            names = ["x%d" % (i + 1) for i in range(self.rank)] if self.rank > 1 else ["x"]
        parts = []
        for e, c in self._terms:
            mon = []
            for name, a in zip(names, e):
                if a == 1:
                    mon.append(name)
                elif a:
                    mon.append("%s^%d" % (name, a))
            m = "*".join(mon)
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append("%d*%s" % (c, m))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {"terms": [{"exp": list(e), "coeff": c} for e, c in self._terms]}

    @classmethod
    def from_json(cls, obj, rank=None):
        terms = obj["terms"] if isinstance(obj, dict) else obj
        pairs = [(t["exp"], t["coeff"]) for t in terms]
        if rank is None and not pairs:
            raise ValueError("empty polynomial needs an explicit rank")
        return cls(pairs, rank)


def mul(f, g):
    return f * g


def apply_lattice_map(A, f):
    """Push f forward along the lattice map v -> A v (A given as a list of rows)."""
    A = [list(r) for r in A]
    if not A or len(A[0]) != f.rank:
        raise ValueError("matrix has %d columns, polynomial has rank %d"
                         % (len(A[0]) if A else 0, f.rank))
    d = {}
    for e, c in f.items():
        v = intlin.matvec(A, e)
        d[v] = d.get(v, 0) + c
    return LaurentPoly(d, len(A))


def act_on_character(A, chi):
    return intlin.matvec(A, chi)


@lru_cache(maxsize=None)
def _adapted_basis(chi):
    U = intlin.unimodular_completion(chi)
    return U, intlin.inverse_unimodular(U)


def _check_args(chi, n):
    chi = character(chi)
    if n <= 0:
        raise ValueError("exponent n must be positive, got %r" % (n,))
    if not is_primitive(chi):
        raise ValueError("character %r is not primitive" % (chi,))
    return chi


def residue_classifier(chi, n):
    """Function sending an exponent to its class in Z[M]/(1 - chi^n) as a monomial key.

    f is divisible by 1 - chi^n iff its coefficients sum to zero on every class.
    """
    chi = _check_args(chi, n)
    U, _ = _adapted_basis(chi)

    def key(e):
        v = intlin.matvec(U, e)
        return (v[0] % n,) + v[1:]

    return key


def _classes(f, chi, n):
    """Coefficient sums over residue classes of (t-exponent mod n, other coordinates)."""
    U, _ = _adapted_basis(chi)
    cls = {}
    for e, c in f.items():
        v = intlin.matvec(U, e)
        key = (v[0] % n,) + v[1:]
        cls[key] = cls.get(key, 0) + c
    return cls


def reduce_mod(f, chi, n):
    """Canonical representative of f in Z[M]/(1 - chi^n).

    In coordinates adapted to chi (chi = e_1), every t-exponent is reduced into
    [0, n); the result is mapped back to the original coordinates.
    """
    chi = _check_args(chi, n)
    if len(chi) != f.rank:
        raise ValueError("character and polynomial live on different lattices")
    _, Uinv = _adapted_basis(chi)
    d = {}
    for key, c in _classes(f, chi, n).items():
        if c:
            d[intlin.matvec(Uinv, key)] = c
    return LaurentPoly(d, f.rank)


def divides_one_minus(f, chi, n=1):
    """True iff (1 - chi^n) divides f in Z[M]."""
    chi = _check_args(chi, n)
    if len(chi) != f.rank:
        raise ValueError("character and polynomial live on different lattices")
    return all(c == 0 for c in _classes(f, chi, n).values())


def divide_one_minus(f, chi, n=1):
    """Exact quotient q with f = (1 - chi^n) q; raises if not divisible.

    chi may be non-primitive; it is normalized first.
    """
    chi0, d = primitive_part(chi)
    n = n * d
    if not divides_one_minus(f, chi0, n):
        raise ArithmeticError("1 - chi^n does not divide f")
    U, Uinv = _adapted_basis(chi0)
    # in adapted coordinates: c_k = q_k - q_{k-n}, so q_k = c_k + q_{k-n}
    groups = {}
    for e, c in f.items():
        v = intlin.matvec(U, e)
        key = (v[0] % n,) + v[1:]
        groups.setdefault(key, []).append((v[0], c))
    q = {}
    for key, lst in groups.items():
        lst.sort()
        acc = 0
        coeff = dict(lst)
        k = lst[0][0]
        top = lst[-1][0]
        while k < top:
            acc += coeff.get(k, 0)
            if acc:
                q[intlin.matvec(Uinv, (k,) + key[1:])] = acc
            k += n
        if acc + coeff.get(top, 0) != 0:
            raise ArithmeticError("inexact division (internal)")
    return LaurentPoly(q, f.rank)


def equivalent_mod(f, g, chi, n=1):
    return divides_one_minus(f - g, chi, n)


def window_monomials(rank, B):
    """All exponent vectors in [-B, B]^rank, in lexicographic order."""
    out = [()]
    for _ in range(rank):
        out = [e + (a,) for e in out for a in range(-B, B + 1)]
    return out



def _to_mpoly(f, shift):
    import flint
    ctx = flint.fmpz_mpoly_ctx.get(("t", f.rank), "lex")
    return ctx, ctx.from_dict({tuple(a - s for a, s in zip(e, shift)): c for e, c in f.items()})


def exact_divide(f, g):
    """q with f = q g in Z[M], or None when g does not divide f.

    Both sides are shifted to polynomials with no monomial factor; then
    Laurent divisibility is polynomial divisibility.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.rank)
    r = f.rank
    lf = tuple(min(e[k] for e in f.support()) for k in range(r))
    lg = tuple(min(e[k] for e in g.support()) for k in range(r))
    ctx, pf = _to_mpoly(f, lf)
    _, pg = _to_mpoly(g, lg)
    q, rem = divmod(pf, pg)
    if rem != 0:
        return None
    return LaurentPoly({tuple(a + s - t for a, s, t in zip(e, lf, lg)): int(c)
                        for e, c in q.to_dict().items()}, r)
