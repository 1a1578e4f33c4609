"""A small exact-rational simplex solver (Bland's rule, dense tableau).

Only what the package needs: maximize c.x subject to A x <= b, x >= 0 with
b >= 0, so the all-slack basis is feasible and no phase-1 is required.
"""

from fractions import Fraction


def simplex_max(a_rows, b, c):
    """Maximize c.x s.t. A x <= b, x >= 0, assuming b >= 0.

    Returns (status, value, x) with status in {"optimal", "unbounded"}.
    Bland's rule guarantees termination.
    """
    m = len(a_rows)
    n = len(c)
    t = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(m)] + [Fraction(bb)]
        for i, (row, bb) in enumerate(zip(a_rows, b))
    ]
    cost = [Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if cost[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if t[i][enter] > 0:
                ratio = t[i][-1] / t[i][enter]
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[i] < basis[best[1]]
                ):
                    best = (ratio, i)
        if best is None:
            return "unbounded", None, None
        _, leave = best
        piv = t[leave][enter]
        t[leave] = [x / piv for x in t[leave]]
        for i in range(m):
            if i != leave and t[i][enter] != 0:
                f = t[i][enter]
                t[i] = [x - f * y for x, y in zip(t[i], t[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, t[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = t[i][-1]
    return "optimal", -cost[-1], tuple(x)


def strict_homogeneous_feasible(rows):
    """Does C w > 0 (componentwise) admit a solution?

    Solved as: maximize t subject to C w >= t 1, t <= 1 (w free, split into
    positive parts).  Returns a witness w or None.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return ()
    p = len(rows[0])
    a = []
    b = []
    for r in rows:
        a.append([-x for x in r] + [x for x in r] + [1])
        b.append(0)
    a.append([0] * (2 * p) + [1])
    b.append(1)
    c = [0] * (2 * p) + [1]
    status, value, x = simplex_max(a, b, c)
    if status != "optimal" or value <= 0:
        return None
    w = tuple(x[i] - x[p + i] for i in range(p))
    assert all(sum(ri * wi for ri, wi in zip(r, w)) > 0 for r in rows)
    return w
