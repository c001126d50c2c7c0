"""Exact feasibility of {x >= 0 : A x = b} by phase-one simplex over Fractions.

Bland's rule, so no cycling. Sized for a handful of equality rows and up to a
few thousand columns (orbit vertices).
"""

from fractions import Fraction


def feasible_point(A, b):
    """Return a nonnegative solution of ``A x = b`` or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        # artificial columns n..n+m-1
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize sum of artificials; reduced costs c_j - c_B B^-1 a_j
    cost = [Fraction(0)] * width + [Fraction(0)]
    for i in range(m):
        for j in range(width + 1):
            if j < n or j == width:
                cost[j] -= rows[i][j]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][width] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded direction in phase one cannot happen (objective bounded below)
            break
        r = best[1]
        piv = rows[r][enter]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[r])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * c for a, c in zip(cost, rows[r])]
        basis[r] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
        elif rows[i][width] != 0:
            return None
    return x


def in_convex_hull(points, target):
    """Exact test whether ``target`` is a convex combination of ``points``."""
    pts = list({tuple(Fraction(v) for v in p) for p in points})
    if not pts:
        return False
    dim = len(target)
    A = [[p[k] for p in pts] for k in range(dim)] + [[Fraction(1)] * len(pts)]
    b = [Fraction(t) for t in target] + [Fraction(1)]
    return feasible_point(A, b) is not None
