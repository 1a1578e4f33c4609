"""Exact integer and rational linear algebra.

Everything here works over Python ints and fractions.Fraction; no floats.
Matrices are lists of row tuples/lists.  The routines are written for the
small dense systems this package produces (dimensions rarely above 8).
"""

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(0 for _ in v)
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Rational vector -> (integer vector, positive common denominator)."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    return tuple(int(f * den) for f in fracs), den


def scale_to_int(v):
    """Primitive integer vector with the same direction as rational v."""
    ints, _ = clear_denominators(v)
    return primitive(ints)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def det_bareiss(mat):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def _rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    """Rank of a matrix with integer or Fraction entries."""
    if not rows:
        return 0
    return len(_rref(rows)[1])


def solve_exact(a_rows, b):
    """One solution of A x = b over Q (free variables zero); None if inconsistent."""
    aug = [list(row) + [bb] for row, bb in zip(a_rows, b)]
    m, pivots = _rref(aug)
    ncols = len(a_rows[0]) if a_rows else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return tuple(x)


def hnf(rows):
    """Hermite-style echelon basis of the lattice spanned by integer rows.

    Deterministic; pivots positive, entries above pivots reduced into
    [0, pivot).  Returns a list of independent integer row tuples.
    """
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    if not work:
        return []
    ncols = len(work[0])
    basis = []
    for col in range(ncols):
        while True:
            cand = [r for r in work if r[col] != 0]
            if len(cand) <= 1:
                break
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            for r in cand[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            work = [r for r in work if any(x != 0 for x in r)]
        cand = [r for r in work if r[col] != 0]
        if cand:
            piv = cand[0]
            if piv[col] < 0:
                for j in range(ncols):
                    piv[j] = -piv[j]
            basis.append(piv)
            work = [r for r in work if r is not piv]
    for i in range(len(basis) - 1, -1, -1):
        pc = next(j for j, x in enumerate(basis[i]) if x != 0)
        for k in range(i):
            q = basis[k][pc] // basis[i][pc]
            if q:
                for j in range(len(basis[k])):
                    basis[k][j] -= q * basis[i][j]
    return [tuple(r) for r in basis]


def snf_transform(rows):
    """Smith normal form with column-transform tracking.

    Returns (divisors, W) where W is an n x n unimodular integer matrix of
    the accumulated column operations: A . W is (up to row operations) the
    diagonal matrix of the divisors.  Rows of W^-1 give a Z^n-basis whose
    first len(divisors) members span the saturation of the row lattice of A.
    """
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return [], []
    m, n = len(a), len(a[0])
    w = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in w:
            row[j1], row[j2] = row[j2], row[j1]

    def col_sub(jdst, q, jsrc):
        for row in a:
            row[jdst] -= q * row[jsrc]
        for row in w:
            row[jdst] -= q * row[jsrc]

    divisors = []
    top = 0
    while top < min(m, n):
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (
                    best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        if bj != top:
            col_swap(top, bj)
        p = a[top][top]
        for i in range(top + 1, m):
            q = a[i][top] // p
            if q:
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
        for j in range(top + 1, n):
            q = a[top][j] // p
            if q:
                col_sub(j, q, top)
        if any(a[i][top] for i in range(top + 1, m)) or any(
            a[top][j] for j in range(top + 1, n)
        ):
            continue
        bad = None
        for i in range(top + 1, m):
            if any(a[i][j] % p != 0 for j in range(top + 1, n)):
                bad = i
                break
        if bad is not None:
            for j in range(top, n):
                a[top][j] += a[bad][j]
            continue
        if p < 0:
            col_sub(top, 2, top)  # negate column: c -= 2c
        divisors.append(abs(p))
        top += 1
    return divisors, [tuple(r) for r in w]


def snf_diagonal(rows):
    """Elementary divisors d_1 | d_2 | ... (positive) of an integer matrix."""
    return snf_transform(rows)[0]


def kernel_int(rows):
    """HNF basis of {x in Z^n : A x = 0}; a saturated lattice."""
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return []
    n = len(rows[0])
    m, pivots = _rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(scale_to_int(v))
    return hnf(basis)


def saturation_basis(vectors):
    """Basis of (Q-span of `vectors`) intersected with Z^n.

    Integer kernels are saturated, so the kernel of the kernel is exactly
    the saturation.
    """
    vecs = [tuple(v) for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return []
    n = len(vecs[0])
    ker = kernel_int(vecs)
    if not ker:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return kernel_int(ker)


def lattice_index_of(vectors):
    """Index of the lattice generated by `vectors` inside its saturation (>=1)."""
    vecs = [tuple(v) for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return 1
    idx = 1
    for d in snf_diagonal(vecs):
        idx *= d
    return idx


def coordinates_in_basis(basis, v):
    """Exact coordinates of v over the basis rows; None if v is not in the span."""
    if not basis:
        return () if all(Fraction(x) == 0 for x in v) else None
    cols = [tuple(col) for col in zip(*basis)]
    sol = solve_exact(cols, v)
    if sol is None:
        return None
    check = [sum(s * b for s, b in zip(sol, col)) for col in cols]
    if any(Fraction(c) != Fraction(x) for c, x in zip(check, v)):
        return None
    return sol


def in_span(basis, v):
    return coordinates_in_basis(basis, v) is not None


def quotient_map(sub_basis, n):
    """Deterministic integer projection Z^n -> Z^(n-r) with kernel = sub lattice.

    `sub_basis` must span a saturated rank-r sublattice.  The map is read off
    the Smith column transform, so it is canonical given the input ordering.
    Returns the projection as a list of n-r integer rows.
    """
    sub = [tuple(r) for r in sub_basis if any(x != 0 for x in r)]
    if not sub:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    divisors, w = snf_transform(sub)
    if any(d != 1 for d in divisors):
        raise ValueError("sublattice is not saturated")
    r = len(divisors)
    # x -> (x . W)[r:] kills exactly the sublattice and is onto Z^(n-r)
    return [tuple(w[j][col] for j in range(n)) for col in range(r, n)]


def matrix_inverse_exact(rows):
    """Exact inverse over Q of a square matrix with int/Fraction entries."""
    n = len(rows)
    m = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]
