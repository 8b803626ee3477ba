"""Exact integer linear algebra: ranks, saturated kernels, unimodular completion.

Everything here works over Z (or Q where only ranks matter).  The heavy
lifting is delegated to FLINT through python-flint.
"""

from math import gcd

import flint


def as_fmpz(rows, ncols=None):
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return flint.fmpz_mat(0, ncols)
    return flint.fmpz_mat(rows)


def to_lists(m):
    return [[int(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def rank(rows, ncols=None):
    """Rank over Q of an integer matrix given as a list of rows."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return as_fmpz(rows, ncols).rank()


def det(rows):
    return int(as_fmpz(rows).det())


def _row_echelon_q(rows, ncols):
    """Independent rows spanning the same Q-row space (reduced, cleared of denominators)."""
    m = as_fmpz(rows, ncols)
    r, _den, rk = m.rref()
    return [[int(r[i, j]) for j in range(ncols)] for i in range(rk)]


def hnf_rows(rows, ncols):
    """Nonzero rows of the row Hermite normal form."""
    if not rows:
        return []
    h = as_fmpz(rows, ncols).hnf()
    out = to_lists(h)
    return [r for r in out if any(r)]


def saturate(basis, ncols):
    """Z-basis of (Q-span of basis) ∩ Z^ncols.

    Write B^T = T^{-1} [H0; 0] with T unimodular.  Then B = H0^T C where the
    rows of C are part of a unimodular matrix, so C = (H0^T)^{-1} B is the
    saturated basis.
    """
    basis = [list(b) for b in basis if any(b)]
    if not basis:
        return []
    basis = _row_echelon_q(basis, ncols)
    k = len(basis)
    bt = as_fmpz(basis, ncols).transpose()
    h = bt.hnf()
    h0 = flint.fmpz_mat([[int(h[i, j]) for j in range(k)] for i in range(k)])
    sol = flint.fmpq_mat(h0.transpose()).solve(flint.fmpq_mat(as_fmpz(basis, ncols)))
    rows = []
    for i in range(k):
        row = []
        for j in range(ncols):
            q = sol[i, j]
            if q.q != 1:
                raise ArithmeticError("saturation produced a non-integral row")
            row.append(int(q.p))
        rows.append(row)
    sat = as_fmpz(rows, ncols)
    if k > 1:
        sat = sat.lll()
    return to_lists(sat)


def integer_kernel(rows, ncols):
    """Saturated Z-basis (as rows) of {x in Z^ncols : M x = 0}."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    m = as_fmpz(rows, ncols)
    x, nullity = m.nullspace()
    if nullity == 0:
        return []
    basis = [[int(x[i, j]) for i in range(ncols)] for j in range(nullity)]
    return saturate(basis, ncols)


def snf_diagonal(rows, ncols):
    """Nonzero invariant factors of an integer matrix."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    s = as_fmpz(rows, ncols).snf()
    out = []
    for i in range(min(s.nrows(), s.ncols())):
        d = int(s[i, i])
        if d:
            out.append(abs(d))
    return out


def is_saturated(basis, ncols):
    """True iff the Z-span of basis is saturated in Z^ncols (all invariant factors 1)."""
    return all(d == 1 for d in snf_diagonal(basis, ncols))


def in_row_span_Z(basis, v):
    """Solve v = c·basis over Z for independent rows; returns c or None."""
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    n = len(v)
    cols = [[basis[i][j] for i in range(k)] for j in range(n)]
    aug = [cols[j] + [v[j]] for j in range(n)]
    if rank(aug, k + 1) != k:
        return None
    r, den, rk = as_fmpz(aug, k + 1).rref()
    den = int(den)
    coeffs = []
    for i in range(k):
        num = int(r[i, k])
        if num % den:
            return None
        coeffs.append(num // den)
    return coeffs


def ext_gcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def unimodular_completion(v):
    """Integer matrix U with det ±1 and U v = e_1, for a primitive vector v.

    Built from elementary row operations (extended gcd on pairs), so U is
    unimodular by construction.
    """
    v = [int(x) for x in v]
    n = len(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("vector %r is not primitive" % (v,))
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    w = list(v)
    # bring a gcd into position 0 by combining pairs (0, j)
    for j in range(1, n):
        a, b = w[0], w[j]
        if b == 0:
            continue
        d, x, y = ext_gcd(a, b)
        # [x y; -b/d a/d] has determinant 1
        r0 = [x * U[0][k] + y * U[j][k] for k in range(n)]
        rj = [(-b // d) * U[0][k] + (a // d) * U[j][k] for k in range(n)]
        U[0], U[j] = r0, rj
        w[0], w[j] = d, 0
    if w[0] == -1:
        U[0] = [-c for c in U[0]]
    return U


def inverse_unimodular(U):
    m = as_fmpz(U)
    d = int(m.det())
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    inv = flint.fmpq_mat(m).inv()
    return [[int(inv[i, j].p) for j in range(inv.ncols())] for i in range(inv.nrows())]


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class SparseZEchelon:
    """Incremental row echelon basis over Z for sparse rows (dict column -> value).

    Rows are inserted one at a time; the stored rows always form a Z-basis of
    the lattice spanned so far.  Pivots are combined with extended gcd steps,
    so nothing is lost over Z.  Fast when rows are short, e.g. the 0/±1
    vectors produced by monomial images.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def add(self, row):
        row = {j: c for j, c in row.items() if c}
        while row:
            col = min(row)
            a = row[col]
            piv = self.pivots.get(col)
            if piv is None:
                if a < 0:
                    row = {j: -c for j, c in row.items()}
                self.pivots[col] = row
                return True
            b = piv[col]
            if a % b == 0:
                row = _axpy(row, piv, -(a // b))
                continue
            g, x, y = ext_gcd(b, a)
            # new pivot x*piv + y*row has leading entry g; the other
            # combination (a/g)*piv - (b/g)*row cancels the leading column
            newp = _lin(piv, x, row, y)
            row = _lin(piv, a // g, row, -(b // g))
            self.pivots[col] = newp
        return False

    def rows(self, ncols):
        out = []
        for col in sorted(self.pivots):
            r = [0] * ncols
            for j, c in self.pivots[col].items():
                r[j] = c
            out.append(r)
        return out


def _axpy(row, piv, q):
    out = dict(row)
    for j, c in piv.items():
        v = out.get(j, 0) + q * c
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


def _lin(r1, a, r2, b):
    out = {}
    for j, c in r1.items():
        out[j] = a * c
    for j, c in r2.items():
        v = out.get(j, 0) + b * c
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return {j: c for j, c in out.items() if c}
