"""Simplicial fans for smooth projective toric varieties.

Rays are primitive vectors in N = Z^r, cones are frozensets of 0-based ray
indices and only maximal cones are stored.  JSON files use 1-based indices.
"""

import json
from itertools import combinations

from . import intlin
from .charlat import is_primitive, sign_normalize


class FanError(ValueError):
    pass


class Fan:
    def __init__(self, rays, max_cones, name=None):
        self.rays = [tuple(int(x) for x in r) for r in rays]
        if not self.rays:
            raise FanError("fan has no rays")
        self.rank = len(self.rays[0])
        self.max_cones = [frozenset(c) for c in max_cones]
        self.name = name
        self._validate()

    def _validate(self):
        for i, r in enumerate(self.rays):
            if len(r) != self.rank:
                raise FanError("ray %d has length %d, expected %d" % (i + 1, len(r), self.rank))
            if not is_primitive(r):
                raise FanError("ray %d = %r is not primitive" % (i + 1, r))
        if len(set(self.rays)) != len(self.rays):
            raise FanError("rays are not pairwise distinct")
        for c in self.max_cones:
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise FanError("cone %s refers to a missing ray" % self.cone_label(c))
            if intlin.rank([self.rays[i] for i in c], self.rank) != len(c):
                raise FanError("cone %s has linearly dependent rays" % self.cone_label(c))

    def __repr__(self):
        return "Fan(%s, rays=%r)" % (self.name or "?", self.rays)

    @staticmethod
    def cone_label(c):
        return "s" + "".join(str(i + 1) for i in sorted(c))

    def labels(self):
        return [self.cone_label(c) for c in self.max_cones]

    def faces(self, c):
        c = sorted(c)
        for k in range(len(c) + 1):
            for sub in combinations(c, k):
                yield frozenset(sub)

    def cones(self):
        out = set()
        for c in self.max_cones:
            out.update(self.faces(c))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def contains_cone(self, c):
        c = frozenset(c)
        return any(c <= m for m in self.max_cones)

    # JSON
    def to_json(self):
        return {"rank": self.rank, "rays": [list(r) for r in self.rays],
                "max_cones": [sorted(i + 1 for i in c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, obj, name=None):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            rank = int(obj["rank"])
            rays = obj["rays"]
            cones = [[i - 1 for i in c] for c in obj["max_cones"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FanError("malformed fan JSON: %s" % exc) from exc
        fan = cls(rays, cones, name=name or obj.get("name"))
        if fan.rank != rank:
            raise FanError("declared rank %d but rays have length %d" % (rank, fan.rank))
        return fan


def is_smooth(fan):
    """Every maximal cone's rays extend to a Z-basis of N."""
    for c in fan.max_cones:
        rows = [fan.rays[i] for i in sorted(c)]
        if len(rows) == fan.rank:
            if abs(intlin.det(rows)) != 1:
                return False
        elif intlin.snf_diagonal(rows, fan.rank) != [1] * len(rows):
            return False
    return True


def _half(v):
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _angle_sorted(rays):
    from functools import cmp_to_key

    def cmp(i, j):
        a, b = rays[i], rays[j]
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha - hb
        c = _cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(range(len(rays)), key=cmp_to_key(cmp))


def is_complete(fan):
    """The maximal cones cover N_R."""
    r = fan.rank
    if any(len(c) != r for c in fan.max_cones):
        return False
    if r == 1:
        signs = sorted(fan.rays[next(iter(c))][0] > 0 for c in fan.max_cones)
        return signs == [False, True]
    if r == 2:
        order = _angle_sorted(fan.rays)
        k = len(order)
        if k < 3:
            return False
        want = set()
        for a in range(k):
            i, j = order[a], order[(a + 1) % k]
            if _cross(fan.rays[i], fan.rays[j]) <= 0:
                return False
            want.add(frozenset((i, j)))
        return want == set(fan.max_cones) and len(fan.max_cones) == k
    # facet pairing: each codimension-one face lies in exactly two maximal cones,
    # and the two cones lie on opposite sides of it
    count = {}
    for c in fan.max_cones:
        for f in combinations(sorted(c), r - 1):
            count.setdefault(frozenset(f), []).append(c)
    for f, cs in count.items():
        if len(cs) != 2:
            return False
        m = wall_character(fan, f)
        (a,) = cs[0] - f
        (b,) = cs[1] - f
        sa = sum(x * y for x, y in zip(m, fan.rays[a]))
        sb = sum(x * y for x, y in zip(m, fan.rays[b]))
        if sa * sb >= 0:
            return False
    return True


def orbit_character_lattice(fan, cone):
    """Integer basis of M(sigma) = sigma^perp ∩ M."""
    cone = frozenset(cone)
    if not fan.contains_cone(cone):
        raise FanError("cone %s is not in the fan" % fan.cone_label(cone))
    rows = [fan.rays[i] for i in sorted(cone)]
    if not rows:
        return [tuple(int(i == j) for j in range(fan.rank)) for i in range(fan.rank)]
    return [sign_normalize(v) for v in intlin.integer_kernel(rows, fan.rank)]


def wall_character(fan, face):
    """Primitive generator of the rank one lattice face^perp, sign normalized."""
    rows = [fan.rays[i] for i in sorted(face)]
    basis = intlin.integer_kernel(rows, fan.rank) if rows else intlin.identity(fan.rank)
    if len(basis) != 1:
        raise FanError("face %s is not a wall" % fan.cone_label(face))
    return sign_normalize(basis[0])


def dual_basis(fan, cone):
    """For a full-dimensional smooth cone, map ray index -> dual basis character."""
    idx = sorted(cone)
    rows = [fan.rays[i] for i in idx]
    inv = intlin.inverse_unimodular(rows)
    # columns of rows^{-1} pair with the rays: rows * inv = I
    return {i: tuple(inv[k][col] for k in range(fan.rank)) for col, i in enumerate(idx)}


def surface_catalog(name, n=None):
    if name == "P1":
        return Fan([(1,), (-1,)], [[0], [1]], name="P1")
    if name == "P2":
        return Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]], name="P2")
    if name == "P1xP1":
        return Fan([(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [0, 3]],
                   name="P1xP1")
    if name == "Fn":
        if n is None:
            raise FanError("Fn needs n")
        n = int(n)
        if n < 1:
            raise FanError("Fn needs n >= 1, got %d" % n)
        return Fan([(1, 0), (0, 1), (-1, n), (0, -1)], [[0, 1], [1, 2], [2, 3], [0, 3]],
                   name="F%d" % n)
    if name == "P3":
        return projective_space(3)
    raise FanError("unknown catalog fan %r" % (name,))


def projective_space(r):
    rays = [tuple(int(i == j) for j in range(r)) for i in range(r)] + [tuple([-1] * r)]
    cones = [sorted(set(range(r + 1)) - {i}) for i in reversed(range(r + 1))]
    return Fan(rays, cones, name="P%d" % r)
