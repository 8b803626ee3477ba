"""Root data, Weyl groups, involutions and restricted roots.

Characters are integer column vectors in M = Z^r.  A matrix acts on the left;
its columns are the images of the basis vectors.  The coroot alpha_j^vee is
stored as the integral functional c_j on M with c_j(alpha_i) = cartan[i][j].
"""

import json
from collections import deque
from importlib import resources

from . import intlin


class RootDataError(ValueError):
    pass


DEFAULT_W_BOUND = 10080


def _mat(rows):
    return tuple(tuple(int(x) for x in r) for r in rows)


def mat_mul(A, B):
    return _mat(intlin.matmul(A, B))


def mat_vec(A, v):
    return intlin.matvec(A, v)


class RootDatum:
    def __init__(self, simple_roots, cartan, fundamental_weights=None, name=None):
        self.simple_roots = [tuple(int(x) for x in a) for a in simple_roots]
        self.cartan = [[int(x) for x in r] for r in cartan]
        self.rank = len(self.simple_roots[0])
        self.name = name
        self.fundamental_weights = None
        if fundamental_weights is not None:
            self.fundamental_weights = [tuple(int(x) for x in w) for w in fundamental_weights]
        self._validate()
        self.coroots = self._coroot_functionals()
        self.reflections = [self._reflection(i) for i in range(len(self.simple_roots))]
        self._roots = None

    def _validate(self):
        l = len(self.simple_roots)
        if any(len(a) != self.rank for a in self.simple_roots):
            raise RootDataError("simple roots have inconsistent lengths")
        if len(self.cartan) != l or any(len(r) != l for r in self.cartan):
            raise RootDataError("Cartan matrix must be %dx%d" % (l, l))
        for i in range(l):
            if self.cartan[i][i] != 2:
                raise RootDataError("Cartan diagonal entry (%d,%d) is not 2" % (i + 1, i + 1))
            for j in range(l):
                if i != j and self.cartan[i][j] > 0:
                    raise RootDataError("Cartan entry (%d,%d) is positive" % (i + 1, j + 1))
                if i != j and (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise RootDataError("Cartan matrix zero pattern is not symmetric")
        if intlin.rank(self.simple_roots, self.rank) != l:
            raise RootDataError("simple roots are linearly dependent")
        if l != self.rank:
            raise RootDataError("only semisimple data of full rank are supported "
                                "(%d simple roots in rank %d)" % (l, self.rank))
        if self.fundamental_weights is not None:
            if len(self.fundamental_weights) != l:
                raise RootDataError("need one fundamental weight per simple root")

    def _coroot_functionals(self):
        import flint
        S = flint.fmpq_mat(intlin.as_fmpz(self.simple_roots))
        out = []
        l = len(self.simple_roots)
        for j in range(l):
            rhs = flint.fmpq_mat([[self.cartan[i][j]] for i in range(l)])
            c = S.solve(rhs)
            vals = [c[k, 0] for k in range(self.rank)]
            if any(v.q != 1 for v in vals):
                raise RootDataError("coroot %d is not integral on the character lattice" % (j + 1))
            out.append(tuple(int(v.p) for v in vals))
        if self.fundamental_weights is not None:
            for i, w in enumerate(self.fundamental_weights):
                for j, c in enumerate(out):
                    if sum(x * y for x, y in zip(w, c)) != int(i == j):
                        raise RootDataError("fundamental weight %d does not pair to delta "
                                            "with the coroots" % (i + 1))
        return out

    def pair(self, v, j):
        """<v, alpha_j^vee>."""
        return sum(x * y for x, y in zip(v, self.coroots[j]))

    def _reflection(self, i):
        a, c = self.simple_roots[i], self.coroots[i]
        return _mat([[int(r == k) - a[r] * c[k] for k in range(self.rank)]
                     for r in range(self.rank)])

    def identity(self):
        return _mat(intlin.identity(self.rank))

    # roots
    def simple_coordinates(self, v):
        import flint
        St = flint.fmpq_mat(intlin.as_fmpz(self.simple_roots).transpose())
        x = St.solve(flint.fmpq_mat([[a] for a in v]))
        return tuple(x[k, 0] for k in range(len(self.simple_roots)))

    def is_positive(self, v):
        co = self.simple_coordinates(v)
        if all(c >= 0 for c in co) and any(c > 0 for c in co):
            return True
        if all(c <= 0 for c in co) and any(c < 0 for c in co):
            return False
        raise RootDataError("vector %r is neither positive nor negative" % (v,))

    def roots(self):
        if self._roots is None:
            seen = set(self.simple_roots)
            frontier = list(self.simple_roots)
            while frontier:
                new = []
                for a in frontier:
                    for s in self.reflections:
                        b = mat_vec(s, a)
                        if b not in seen:
                            seen.add(b)
                            new.append(b)
                frontier = new
                if len(seen) > 100000:
                    raise RootDataError("root system is infinite")
            pos = sorted((a for a in seen if self.is_positive(a)), key=self._height_key)
            self._roots = (pos, sorted(seen))
        return self._roots[1]

    def _height_key(self, a):
        co = self.simple_coordinates(a)
        return (sum(co), tuple(-c for c in co))

    def positive_roots(self):
        self.roots()
        return list(self._roots[0])

    def to_json(self):
        out = {"rank": self.rank, "simple_roots": [list(a) for a in self.simple_roots],
               "cartan": self.cartan}
        if self.fundamental_weights is not None:
            out["fundamental_weights"] = [list(w) for w in self.fundamental_weights]
        return out

    @classmethod
    def from_json(cls, obj, name=None):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            d = cls(obj["simple_roots"], obj["cartan"], obj.get("fundamental_weights"),
                    name=name or obj.get("name"))
        except (KeyError, TypeError) as exc:
            raise RootDataError("malformed root datum JSON: %s" % exc) from exc
        if "rank" in obj and int(obj["rank"]) != d.rank:
            raise RootDataError("declared rank %s but roots have length %d" % (obj["rank"], d.rank))
        return d


class WeylElement:
    __slots__ = ("matrix", "word", "length")

    def __init__(self, matrix, word, length):
        self.matrix = matrix
        self.word = tuple(word)
        self.length = length

    def __repr__(self):
        return "W(%s)" % self.label

    @property
    def label(self):
        return "e" if not self.word else "s" + "s".join(str(i + 1) for i in self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


class WeylGroup:
    """All elements with shortlex-least reduced words, found by breadth first search."""

    def __init__(self, datum, bound=DEFAULT_W_BOUND):
        self.datum = datum
        self.elements = []
        self.by_matrix = {}
        ident = datum.identity()
        queue = deque([(ident, ())])
        self.by_matrix[ident] = None
        while queue:
            m, word = queue.popleft()
            el = WeylElement(m, word, len(word))
            self.by_matrix[m] = el
            self.elements.append(el)
            if len(self.elements) > bound:
                raise RootDataError("Weyl group exceeds the bound %d" % bound)
            for i, s in enumerate(datum.reflections):
                n = mat_mul(m, s)
                if n not in self.by_matrix:
                    self.by_matrix[n] = None
                    queue.append((n, word + (i,)))
        self.by_label = {w.label: w for w in self.elements}
        self._pos = datum.positive_roots()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element(self, m):
        return self.by_matrix[_mat(m)]

    def mul(self, u, v):
        return self.by_matrix[mat_mul(u.matrix, v.matrix)]

    def inverse(self, w):
        import flint
        inv = flint.fmpq_mat(intlin.as_fmpz(w.matrix)).inv()
        return self.by_matrix[_mat([[int(inv[i, j].p) for j in range(inv.ncols())]
                                    for i in range(inv.nrows())])]

    def identity(self):
        return self.elements[0]

    def longest(self):
        return max(self.elements, key=lambda w: w.length)

    def simple(self, i):
        return self.by_matrix[self.datum.reflections[i]]

    def reflection_of_root(self, a):
        """s_alpha(v) = v - <v, alpha^vee> alpha, found as the element fixing a hyperplane and negating a."""
        na = tuple(-x for x in a)
        for w in self.elements:
            if mat_vec(w.matrix, a) == na:
                d = [[w.matrix[i][j] - int(i == j) for j in range(len(a))] for i in range(len(a))]
                if intlin.rank(d, len(a)) == 1:
                    return w
        raise RootDataError("no reflection for %r" % (a,))

    def inversion_count(self, w):
        return sum(1 for a in self._pos if not self.datum.is_positive(mat_vec(w.matrix, a)))

    def bruhat_leq(self, u, w):
        """u <= w in Bruhat order, by the subword property of a reduced word of w."""
        return u.matrix in self.subword_products(w)

    def subword_products(self, w):
        cache = getattr(self, "_subwords", None)
        if cache is None:
            cache = self._subwords = {}
        if w.matrix not in cache:
            prods = {self.datum.identity()}
            for i in w.word:
                s = self.datum.reflections[i]
                prods = prods | {mat_mul(p, s) for p in prods}
            cache[w.matrix] = frozenset(prods)
        return cache[w.matrix]


def generate_weyl(datum, bound=DEFAULT_W_BOUND):
    return WeylGroup(datum, bound)


# ------------------------------------------------------------ involutions

class Involution:
    def __init__(self, theta, datum=None):
        self.theta = _mat(theta)
        r = len(self.theta)
        if mat_mul(self.theta, self.theta) != _mat(intlin.identity(r)):
            raise RootDataError("theta is not an involution")
        if datum is not None:
            roots = set(datum.roots())
            for a in roots:
                if mat_vec(self.theta, a) not in roots:
                    raise RootDataError("theta does not permute the roots (image of %r)" % (a,))

    def __call__(self, v):
        return mat_vec(self.theta, v)

    def to_json(self):
        return {"theta": [list(r) for r in self.theta]}

    @classmethod
    def from_json(cls, obj, datum=None):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(obj["theta"], datum)
        except (KeyError, TypeError) as exc:
            raise RootDataError("malformed involution JSON: %s" % exc) from exc


def theta_partition(datum, theta):
    """(Delta_L, Delta^{-theta}, Phi_L^+, Phi^{-theta}) as lists of simple indices / roots."""
    th = theta if isinstance(theta, Involution) else Involution(theta, datum)
    pos = datum.positive_roots()
    d_minus = [i for i, a in enumerate(datum.simple_roots) if not datum.is_positive(th(a))]
    d_L = [i for i in range(len(datum.simple_roots)) if i not in d_minus]
    phi_minus = [a for a in pos if not datum.is_positive(th(a))]
    phi_L = [a for a in pos if all(c == 0 for k, c in enumerate(datum.simple_coordinates(a))
                                   if k in d_minus)]
    if not phi_minus or sorted(phi_minus + phi_L) != sorted(pos) or set(phi_minus) & set(phi_L):
        raise RootDataError("involution incompatible with positive system")
    for a in phi_L:
        if th(a) != a:
            raise RootDataError("involution incompatible with positive system "
                                "(theta moves the Levi root %r)" % (a,))
    return d_L, d_minus, phi_L, phi_minus


def eigenlattice(theta, sign):
    """Saturated basis of {m : theta m = sign m}."""
    r = len(theta)
    rows = [[theta[i][j] - sign * int(i == j) for j in range(r)] for i in range(r)]
    return [tuple(v) for v in intlin.integer_kernel(rows, r)]


def split_coordinates(E, v):
    c = intlin.in_row_span_Z([list(e) for e in E], list(v))
    if c is None:
        raise RootDataError("%r is not in the split lattice" % (v,))
    return tuple(c)


class RestrictedRoots:
    def __init__(self, basis, roots, simple, weyl_matrices, cartan):
        self.basis = basis          # E: Z-basis of the -1 eigenlattice (vectors in M)
        self.roots = roots          # in E-coordinates
        self.simple = simple        # in E-coordinates
        self.weyl = weyl_matrices   # W_{G/H} as matrices on E-coordinates
        self.cartan = cartan

    @property
    def rank(self):
        return len(self.basis)


def restricted_roots(datum, theta, W=None):
    """Restricted roots alpha - theta(alpha), their simple system, and W_{G/H}."""
    th = theta if isinstance(theta, Involution) else Involution(theta, datum)
    d_L, d_minus, phi_L, phi_minus = theta_partition(datum, th)
    E = eigenlattice(th.theta, -1)
    if not E:
        raise RootDataError("split rank is zero")
    gam = set()
    for a in phi_minus:
        g = tuple(x - y for x, y in zip(a, th(a)))
        c = split_coordinates(E, g)
        gam.add(c)
        gam.add(tuple(-x for x in c))
    roots = sorted(gam)
    for b in roots:
        if tuple(2 * x for x in b) in gam:
            raise RootDataError("restricted root system is not reduced")
    simple = []
    for i in d_minus:
        a = datum.simple_roots[i]
        c = split_coordinates(E, tuple(x - y for x, y in zip(a, th(a))))
        if c not in simple:
            simple.append(c)
    if W is None:
        W = generate_weyl(datum)
    WH = weyl_H(W, th)
    mats = {}
    for w in WH:
        m = _restrict(w.matrix, E)
        mats.setdefault(m, w)
    wmats = sorted(mats)
    cartan = _restricted_cartan(simple, wmats)
    return RestrictedRoots(E, roots, simple, wmats, cartan)


def _restrict(A, E):
    """Matrix of A on the sublattice with basis E (columns are images in E-coordinates)."""
    cols = [split_coordinates(E, mat_vec(A, e)) for e in E]
    k = len(E)
    return _mat([[cols[j][i] for j in range(k)] for i in range(k)])


def _restricted_cartan(simple, wmats):
    k = len(simple[0]) if simple else 0
    refl = []
    for b in simple:
        nb = tuple(-x for x in b)
        found = None
        for m in wmats:
            if mat_vec(m, b) == nb:
                d = [[m[i][j] - int(i == j) for j in range(k)] for i in range(k)]
                if intlin.rank(d, k) == 1:
                    found = m
                    break
        if found is None:
            raise RootDataError("no restricted reflection for %r" % (b,))
        refl.append(found)
    cartan = []
    for i, bi in enumerate(simple):
        row = []
        for j, bj in enumerate(simple):
            # s_j(b_i) = b_i - A_ij b_j
            img = mat_vec(refl[j], bi)
            diff = tuple(x - y for x, y in zip(bi, img))
            coef = None
            for x, y in zip(diff, bj):
                if y:
                    coef = x // y
                    break
            row.append(coef if coef is not None else 0)
        cartan.append(row)
    return cartan


def weyl_H(W, theta):
    """theta-centralizer in W."""
    th = theta.theta if isinstance(theta, Involution) else _mat(theta)
    return [w for w in W if mat_mul(th, w.matrix) == mat_mul(w.matrix, th)]


def weyl_L(W, d_L):
    """Elements of the parabolic subgroup generated by the simple reflections in d_L."""
    d_L = set(d_L)
    return [w for w in W if set(w.word) <= d_L]


def minimal_coset_reps(W, sub):
    """Minimal length representative of each left coset w*sub (ties: shortlex word)."""
    submats = {u.matrix for u in sub}
    if W.identity().matrix not in submats:
        raise RootDataError("subset does not contain the identity")
    for u in sub:
        for v in sub:
            if mat_mul(u.matrix, v.matrix) not in submats:
                raise RootDataError("subset is not a subgroup")
    reps = []
    seen = set()
    for w in sorted(W, key=lambda w: (w.length, w.word)):
        if w.matrix in seen:
            continue
        coset = {mat_mul(w.matrix, u) for u in submats}
        seen |= coset
        reps.append(w)
    return reps


def coset_of(W, sub, w):
    return frozenset(mat_mul(w.matrix, u.matrix) for u in sub)


def steinberg_basis(datum, W=None):
    """e_v = v^{-1}(sum of fundamental weights lambda_i with v^{-1} alpha_i < 0)."""
    if datum.fundamental_weights is None:
        raise RootDataError("Steinberg basis needs fundamental weights")
    if W is None:
        W = generate_weyl(datum)
    out = {}
    for v in W:
        vinv = W.inverse(v)
        lam = [0] * datum.rank
        for i, a in enumerate(datum.simple_roots):
            if not datum.is_positive(mat_vec(vinv.matrix, a)):
                lam = [x + y for x, y in zip(lam, datum.fundamental_weights[i])]
        out[v.label] = mat_vec(vinv.matrix, lam)
    return out


def steinberg_determinant(datum, W=None):
    """det(w(e^{e_v}))_{w,v} divided by prod_{alpha>0}(1 - e^{-alpha})^{|W|/2}.

    Steinberg's theorem says the family is an R(T)^W-basis of R(T) exactly
    when this quotient is a unit (a signed monomial).  Returns the quotient,
    or None if the division is not exact.
    """
    from .charlat import LaurentPoly, divide_one_minus, divides_one_minus, primitive_part
    if W is None:
        W = generate_weyl(datum)
    e = steinberg_basis(datum, W)
    els = list(W)
    n = len(els)
    M = [[LaurentPoly.monomial(mat_vec(w.matrix, e[v.label])) for v in els] for w in els]
    det = _laurent_det(M, datum.rank)
    for a in datum.positive_roots():
        chi, d = primitive_part(tuple(-x for x in a))
        for _ in range(n // 2):
            if not divides_one_minus(det, chi, d):
                return None
            det = divide_one_minus(det, chi, d)
    return det


def _laurent_det(M, rank):
    """Determinant by Laplace expansion along rows, memoized on used-column sets.

    2^n subproblems, fine for the |W| <= 8 matrices used here.
    """
    from .charlat import LaurentPoly
    n = len(M)
    memo = {}

    def rec(row, cols):
        if row == n:
            return LaurentPoly.one(rank)
        if cols in memo:
            return memo[cols]
        total = LaurentPoly.zero(rank)
        k = 0
        for j in range(n):
            if cols >> j & 1:
                continue
            if not M[row][j].is_zero():
                term = M[row][j] * rec(row + 1, cols | (1 << j))
                total = total + term if k % 2 == 0 else total - term
            k += 1
        memo[cols] = total
        return total

    return rec(0, 0)


# ------------------------------------------------------------ bundled data

def _data_path(name):
    return resources.files("gkmkalc").joinpath("data", name)


def load_json(name):
    return json.loads(_data_path(name).read_text())


def bundled_datum(name):
    obj = load_json("datum_%s.json" % name)
    return RootDatum.from_json(obj, name=name)


def bundled_instance(name):
    """(datum, theta, H datum or None) for a bundled symmetric space instance."""
    obj = load_json("instance_%s.json" % name)
    d = RootDatum.from_json(obj["datum"], name=obj["datum"].get("name", name))
    th = Involution.from_json(obj["involution"], d)
    h = obj.get("h_datum")
    if isinstance(h, str):
        h = bundled_datum(h)
    elif h is not None:
        h = RootDatum.from_json(h)
    return d, th, h
