"""Small exact linear algebra over the rationals and the integers."""

from fractions import Fraction
from math import gcd


def frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def solve(A, b):
    """Solve the square system A x = b exactly. Raises ValueError if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def inverse(A):
    n = len(A)
    cols = [solve(A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def determinant(A):
    n = len(A)
    M = [[Fraction(v) for v in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return det


def rank(rows):
    M = [[Fraction(v) for v in row] for row in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col] / M[r][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[r])]
        r += 1
    return r


def matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def transpose(A):
    return [list(col) for col in zip(*A)]


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else max(a, b)


def common_denominator(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def smith_normal_form(A):
    """Smith normal form of an integer m x n matrix.

    Returns ``(D, U, V)`` with ``U A V = D``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries, each dividing the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
    return D, U, V


def hermite_rows(rows):
    """Row-style Hermite normal form (unimodular row operations only)."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return M
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        if r >= len(M):
            break
        while True:
            nz = [(abs(M[i][col]), i) for i in range(r, len(M)) if M[i][col]]
            if not nz:
                break
            _, i = min(nz)
            M[r], M[i] = M[i], M[r]
            done = True
            for k in range(r + 1, len(M)):
                q = M[k][col] // M[r][col]
                if q:
                    M[k] = [a - q * b for a, b in zip(M[k], M[r])]
                if M[k][col]:
                    done = False
            if done:
                break
        if r < len(M) and M[r][col]:
            if M[r][col] < 0:
                M[r] = [-v for v in M[r]]
            for k in range(r):
                q = M[k][col] // M[r][col]
                if q:
                    M[k] = [a - q * b for a, b in zip(M[k], M[r])]
            r += 1
    return M
