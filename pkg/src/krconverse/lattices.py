"""Quotients of the weight lattice, the projections onto them, and the orders on them.

Every quotient here is a quotient of P(R), written in Dynkin-label coordinates
(so P(R) is literally Z^n), by a sublattice given by integer generators. A
Smith normal form of the generator matrix fixes canonical class coordinates:
free coordinates first (Hermite-normalized, positive pivots), then torsion
residues in ``[0, order)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, ConsistencyError
from .linalg import hermite_rows, inverse, smith_normal_form, solve
from .rootdata import (
    as_vec,
    from_dynkin,
    is_weight,
    scaled_norm2,
    sub,
    to_dynkin,
)


@dataclass(frozen=True)
class LatticeClass:
    ambient: str
    coords: tuple

    def __str__(self):
        return f"{self.ambient}{list(self.coords)}"


class Quotient:
    """Z^n modulo the span of ``generators``."""

    def __init__(self, n, generators, tag):
        self.n = n
        self.tag = tag
        gens = [list(map(int, g)) for g in generators if any(g)]
        if gens:
            A = [[g[i] for g in gens] for i in range(n)]
            D, U, _ = smith_normal_form(A)
            diag = [D[i][i] if i < len(gens) else 0 for i in range(n)]
        else:
            U = [[int(i == j) for j in range(n)] for i in range(n)]
            diag = [0] * n
        free_idx = [i for i in range(n) if diag[i] == 0]
        tors_idx = [i for i in range(n) if diag[i] > 1]
        free_rows = hermite_rows([U[i] for i in free_idx])
        for i, row in zip(free_idx, free_rows):
            U[i] = row
        self._U = U
        self._Uinv = [[int(v) for v in row] for row in inverse(U)]
        self.order = [(i, 0) for i in free_idx] + [(i, diag[i]) for i in tors_idx]
        self.moduli = tuple(m for _, m in self.order)
        self.free_rank = len(free_idx)
        self.torsion = tuple(diag[i] for i in tors_idx)
        self._rows = [(U[i], m) for i, m in self.order]

    def coords(self, d):
        out = []
        for row, m in self._rows:
            v = sum(a * b for a, b in zip(row, d))
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise PreconditionError("vector is not in the ambient lattice")
                v = v.numerator
            out.append(v % m if m else v)
        return tuple(out)

    def class_of(self, d):
        return LatticeClass(self.tag, self.coords(d))

    def rep(self, coords):
        """A Dynkin-label representative of the class with these coordinates."""
        if len(coords) != len(self.order):
            raise PreconditionError(f"{self.tag} classes have {len(self.order)} coordinates, got {len(coords)}")
        c = [0] * self.n
        for (i, _), v in zip(self.order, coords):
            c[i] = int(v)
        return tuple(sum(self._Uinv[r][k] * c[k] for k in range(self.n)) for r in range(self.n))

    def normalize(self, coords):
        return tuple(v % m if m else v for v, m in zip(coords, self.moduli))


def _levi_tag(J):
    return "[" + ",".join(str(j) for j in sorted(J)) + "]"


def check_levi(R, J):
    J = tuple(sorted(set(J)))
    if not J or len(J) >= R.rank:
        raise PreconditionError(f"Levi subset must be proper and nonempty, got {list(J)} for {R.name}")
    if any(not 0 <= j < R.rank for j in J):
        raise PreconditionError(f"Levi subset {list(J)} has nodes outside 0..{R.rank - 1}")
    return J


@dataclass(frozen=True)
class LeviSubset:
    J: tuple
    sub_positive_coroots: tuple = field(repr=False)
    sub_positive_roots: tuple = field(repr=False)


def levi(R, J):
    J = check_levi(R, J)
    key = ("levi", J)
    if key not in R._cache:
        Jset = set(J)
        roots, coroots = [], []
        for r, c in zip(R.positive_roots, R.positive_coroots):
            if all(r[i] == 0 for i in range(R.rank) if i not in Jset):
                roots.append(r)
                coroots.append(c)
        R._cache[key] = LeviSubset(J, tuple(coroots), tuple(roots))
    return R._cache[key]


def quotient_G(R):
    key = ("XG",)
    if key not in R._cache:
        R._cache[key] = Quotient(R.rank, R.simple_root_dynkin, f"{R.name}:X_G")
    return R._cache[key]


def quotient_M(R, J):
    J = check_levi(R, J)
    key = ("XM", J)
    if key not in R._cache:
        gens = [R.simple_root_dynkin[j] for j in J]
        R._cache[key] = Quotient(R.rank, gens, f"{R.name}:X_M{_levi_tag(J)}")
    return R._cache[key]


def project(R, x, J=None):
    """Class of the weight x (root coords) in X_G (J None) or in X_M = P(R)/Q(R_J)."""
    x = as_vec(x)
    if not is_weight(R, x):
        raise PreconditionError(f"{x} is not in the weight lattice of {R.name}")
    q = quotient_G(R) if J is None else quotient_M(R, J)
    return q.class_of(to_dynkin(R, x))


def class_rep(R, cls, J=None):
    """Root-coordinate representative of a class of X_G or X_M."""
    q = quotient_G(R) if J is None else quotient_M(R, J)
    if cls.ambient != q.tag:
        raise PreconditionError(f"class lives in {cls.ambient}, expected {q.tag}")
    return from_dynkin(R, q.rep(cls.coords))


def to_X_G(R, J, cls):
    """Image in X_G of a class of X_M (well defined since Q(R_J) is inside Q(R))."""
    return project(R, class_rep(R, cls, J))


def leq_dominance(R, nu, mu):
    """nu <= mu: mu - nu is a nonnegative integral combination of simple roots."""
    return all(d.denominator == 1 and d >= 0 for d in sub(as_vec(mu), as_vec(nu)))


def leq_P(R, J, a, b):
    """a <= b in X_M: b - a is a nonnegative integral combination of images of alpha_i, i not in J.

    The images of those simple roots are independent in X_M (x) R, and the
    difference of two representatives has the same coordinates outside J as
    any combination realizing it, so the coefficients are forced; only the
    torsion needs an exact class comparison.
    """
    J = check_levi(R, J)
    q = quotient_M(R, J)
    if a.ambient != q.tag or b.ambient != q.tag:
        raise PreconditionError(f"classes must both lie in {q.tag}")
    xa, xb = class_rep(R, a, J), class_rep(R, b, J)
    diff = sub(xb, xa)
    coeffs = {}
    for i in range(R.rank):
        if i in J:
            continue
        c = diff[i]
        if c.denominator != 1 or c < 0:
            return False
        coeffs[i] = int(c)
    moved = list(xa)
    for i, c in coeffs.items():
        moved[i] += c
    return q.class_of(to_dynkin(R, moved)) == b


def orth_project_complement(R, J, x):
    """Orthogonal projection onto the complement of span{alpha_j : j in J}.

    Returns ``(p, k)`` with ``x = p + sum_j k[j] alpha_j`` (k aligned with the
    sorted J) and ``<p, alpha_j^vee> = 0`` for every j in J.
    """
    J = tuple(sorted(J))
    x = as_vec(x)
    if not J:
        return x, ()
    rhs = [sum(R.cartan[i][m] * x[m] for m in range(R.rank)) for i in J]
    A = [[R.cartan[i][j] for j in J] for i in J]
    k = solve(A, rhs)
    p = list(x)
    for j, kj in zip(J, k):
        p[j] -= kj
    return tuple(p), tuple(k)


def is_J_dominant(R, J, z):
    d = to_dynkin(R, z)
    return all(d[j] >= 0 for j in J)


def is_J_minuscule(R, J, z):
    d = to_dynkin(R, z)
    for cov in levi(R, J).sub_positive_coroots:
        v = sum(c * dj for c, dj in zip(cov, d))
        if v not in (-1, 0, 1):
            return False
    return True


def lift_dynkin(R, J, d):
    """J-dominant J-minuscule element of d + Q(R_J), all in integer Dynkin labels.

    Moves: reflect at a J-node with negative label; once J-dominant, subtract a
    positive root gamma of R_J with <z, gamma^vee> >= 2 (simple ones first).
    Both moves stay in the coset mod Q(R_J). Reflections keep the norm and
    finitely many of them reach J-dominance; each subtraction lowers the norm
    by (gamma, gamma)(<z, gamma^vee> - 1) > 0, which is asserted.
    """
    L = levi(R, J)
    key = ("levi-order", J)
    if key not in R._cache:
        pairs = sorted(zip(L.sub_positive_roots, L.sub_positive_coroots), key=lambda rc: sum(rc[0]))
        dyn = {tuple(r): d for r, d in zip(R.positive_roots, R.positive_root_dynkin)}
        R._cache[key] = [(dyn[tuple(r)], tuple((k, c) for k, c in enumerate(cov) if c)) for r, cov in pairs]
    order = R._cache[key]
    z = list(d)
    norm = scaled_norm2(R, z)
    while True:
        neg = next((j for j in J if z[j] < 0), None)
        if neg is not None:
            a = z[neg]
            col = R.simple_root_dynkin[neg]
            z = [v - a * c for v, c in zip(z, col)]
            continue
        big = None
        for root_dyn, cov in order:
            if sum(c * z[k] for k, c in cov) >= 2:
                big = root_dyn
                break
        if big is None:
            return tuple(z)
        z = [v - r for v, r in zip(z, big)]
        new = scaled_norm2(R, z)
        if not new < norm:
            raise ConsistencyError("lift norm did not decrease", check="lift-termination", witness=tuple(z))
        norm = new


def j_minuscule_dominant_lift(R, J, y):
    """The unique z with class y in X_M that is J-dominant and J-minuscule (root coordinates)."""
    J = check_levi(R, J)
    q = quotient_M(R, J)
    if y.ambient != q.tag:
        raise PreconditionError(f"class lives in {y.ambient}, expected {q.tag}")
    zd = lift_dynkin(R, J, q.rep(y.coords))
    if q.class_of(zd) != y:
        raise ConsistencyError("lift left the coset", check="lift-coset", witness=zd)
    return from_dynkin(R, zd)
